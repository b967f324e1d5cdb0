// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cg/rng.hpp"

namespace cg {

// A unitary whose designated sub-block equals scale * target.
struct BlockEncoding {
  Mat unitary;
  double scale = 1.0;
  int block_row = 0, block_col = 0;  // block indices, in units of block_dim
  int block_dim = 0;
  Mat target;

  Mat encoded_block() const;
  // Max of the unitarity deviation and the block deviation.
  double audit() const;
};

// V_pm = |+><+| (x) B0 +- |-><-| (x) B1; encodes (B0 +- B1) with scale 1/2.
BlockEncoding block_encode_bpm(const Mat& b0, const Mat& b1, int sign);

// V2_pm V1_pm; encodes (B0 +- B1)^2 with scale 1/4.
BlockEncoding block_encode_bpm_squared(const Mat& b0, const Mat& b1, int sign);

// (W2_pm)^dagger W1_pm; encodes |{B0,B1}|^2 (sign +) or |[B0,B1]|^2 (sign -)
// with scale 1/4.
BlockEncoding block_encode_anticommutator_sq(const Mat& b0, const Mat& b1);
BlockEncoding block_encode_commutator_sq(const Mat& b0, const Mat& b1);

// Shift-and-scale wrapper: from a block encoding of B with scale t and
// r = ||B||, build an encoding of H = (B + 4r I)/(6r), whose spectrum lies
// in [1/2, 5/6]. The new scale is 6rt/(4rt + 1).
BlockEncoding shifted_block_encoding(const BlockEncoding& v, double r);

// Convenience: a binary observable is its own block encoding with t = 1.
BlockEncoding shifted_block_encoding(const Mat& binary_obs);

struct SpectralSample {
  double value;
  double probability;
};

// Exact spectral measurement of a Hermitian observable on rho: outcomes are
// eigenvalues, probabilities their Born weights. Satisfies the advertised
// precision contract with zero error; eps is kept in the interface.
std::vector<SpectralSample> spectral_measure(const Mat& b, const Mat& rho,
                                             double eps);

double spectral_mean(const std::vector<SpectralSample>& samples);

}  // namespace cg

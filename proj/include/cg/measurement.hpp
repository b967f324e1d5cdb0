// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "cg/rng.hpp"
#include "cg/state.hpp"

namespace cg {

struct ProjectiveMeasurement {
  std::vector<uint64_t> outcomes;
  std::vector<Mat> projectors;

  // Checks P^2 = P = P^dagger, pairwise orthogonality, completeness.
  void validate(double tol = kOpTol) const;

  static ProjectiveMeasurement computational_basis(int n);
};

struct MeasureBranch {
  uint64_t outcome;
  double probability;
  StateVector post;  // P_i |psi>, subnormalized
};

// All branches of measuring M on psi. Probabilities sum to 1 within tol.
std::vector<MeasureBranch> measure(const ProjectiveMeasurement& m,
                                   const StateVector& psi);

MeasureBranch sample_measure(const ProjectiveMeasurement& m,
                             const StateVector& psi, Rng& rng);

// Hermitian involution with its +-1 eigenprojectors. Outcome bit b maps to
// eigenvalue (-1)^b.
struct BinaryObservable {
  Mat matrix;
  Mat proj_plus;
  Mat proj_minus;

  static BinaryObservable from_matrix(const Mat& m, double tol = kOpTol);
  ProjectiveMeasurement to_pvm() const;
};

}  // namespace cg

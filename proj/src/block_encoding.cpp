// SPDX-License-Identifier: Apache-2.0
#include "cg/block_encoding.hpp"

#include <cmath>

namespace cg {

namespace {

void require_binary(const Mat& b, const char* who) {
  if (!is_hermitian(b) || !is_identity(b * b))
    throw std::invalid_argument(std::string(who) + ": input is not a binary observable");
}

Mat plus_proj() {
  Mat m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return m;
}
Mat minus_proj() {
  Mat m(2, 2);
  m << 0.5, -0.5, -0.5, 0.5;
  return m;
}

// |+><+| (x) I^k (x) U0  +-  |-><-| (x) I^k (x) U1 with the ancilla at
// position `slot` among `anc` ancilla qubits.
Mat controlled_pair(const Mat& u0, const Mat& u1, int sign, int anc, int slot) {
  Mat m0 = Mat::Identity(1, 1), m1 = m0;
  for (int q = 0; q < anc; ++q) {
    if (q == slot) {
      m0 = kron(m0, plus_proj());
      m1 = kron(m1, minus_proj());
    } else {
      m0 = kron(m0, Mat::Identity(2, 2));
      m1 = kron(m1, Mat::Identity(2, 2));
    }
  }
  return kron(m0, u0) + static_cast<double>(sign) * kron(m1, u1);
}

}  // namespace

Mat BlockEncoding::encoded_block() const {
  return unitary.block(block_row * block_dim, block_col * block_dim, block_dim,
                       block_dim);
}

double BlockEncoding::audit() const {
  Mat id = Mat::Identity(unitary.rows(), unitary.cols());
  double unit_dev = max_abs(unitary.adjoint() * unitary - id);
  double block_dev = max_abs(encoded_block() - scale * target);
  return std::max(unit_dev, block_dev);
}

BlockEncoding block_encode_bpm(const Mat& b0, const Mat& b1, int sign) {
  require_binary(b0, "block_encode_bpm");
  require_binary(b1, "block_encode_bpm");
  BlockEncoding e;
  e.unitary = controlled_pair(b0, b1, sign, 1, 0);
  e.scale = 0.5;
  e.block_dim = static_cast<int>(b0.rows());
  e.target = b0 + static_cast<double>(sign) * b1;
  return e;
}

BlockEncoding block_encode_bpm_squared(const Mat& b0, const Mat& b1, int sign) {
  require_binary(b0, "block_encode_bpm_squared");
  require_binary(b1, "block_encode_bpm_squared");
  Mat v1 = controlled_pair(b0, b1, sign, 2, 0);
  Mat v2 = controlled_pair(b0, b1, sign, 2, 1);
  BlockEncoding e;
  e.unitary = v2 * v1;
  e.scale = 0.25;
  e.block_dim = static_cast<int>(b0.rows());
  Mat lc = b0 + static_cast<double>(sign) * b1;
  e.target = lc * lc;
  return e;
}

namespace {
BlockEncoding encode_product_bracket(const Mat& b0, const Mat& b1, int sign) {
  require_binary(b0, "block_encode bracket");
  require_binary(b1, "block_encode bracket");
  Mat w1 = controlled_pair(b0 * b1, b1 * b0, sign, 2, 0);
  Mat w2 = controlled_pair(b0 * b1, b1 * b0, sign, 2, 1);
  BlockEncoding e;
  e.unitary = w2.adjoint() * w1;
  e.scale = 0.25;
  e.block_dim = static_cast<int>(b0.rows());
  Mat bracket = b0 * b1 + static_cast<double>(sign) * b1 * b0;
  e.target = matrix_abs_sq(bracket);
  return e;
}
}  // namespace

BlockEncoding block_encode_anticommutator_sq(const Mat& b0, const Mat& b1) {
  return encode_product_bracket(b0, b1, +1);
}

BlockEncoding block_encode_commutator_sq(const Mat& b0, const Mat& b1) {
  return encode_product_bracket(b0, b1, -1);
}

BlockEncoding shifted_block_encoding(const BlockEncoding& v, double r) {
  if (r <= 0) throw std::invalid_argument("shifted_block_encoding: need r > 0");
  const double t = v.scale;
  const double c = 4 * r * t + 1;
  Mat rot(2, 2);
  rot << std::sqrt(4 * r * t / c), -1 / std::sqrt(c), 1 / std::sqrt(c),
      std::sqrt(4 * r * t / c);
  const auto dim = v.unitary.rows();
  Mat ctrl = Mat::Zero(2 * dim, 2 * dim);
  ctrl.block(0, 0, dim, dim) = Mat::Identity(dim, dim);
  ctrl.block(dim, dim, dim, dim) = v.unitary;
  Mat rfull = kron(rot, Mat::Identity(dim, dim));
  BlockEncoding e;
  e.unitary = rfull.adjoint() * ctrl * rfull;
  e.block_dim = v.block_dim;
  e.scale = 6 * r * t / c;
  e.target = (v.target + 4 * r * Mat::Identity(v.block_dim, v.block_dim)) / (6 * r);
  return e;
}

BlockEncoding shifted_block_encoding(const Mat& binary_obs) {
  require_binary(binary_obs, "shifted_block_encoding");
  double r = spectral_norm_hermitian(binary_obs);
  if (r <= 0) throw std::invalid_argument("shifted_block_encoding: zero operator");
  BlockEncoding trivial;
  trivial.unitary = binary_obs;
  trivial.scale = 1.0;
  trivial.block_dim = static_cast<int>(binary_obs.rows());
  trivial.target = binary_obs;
  return shifted_block_encoding(trivial, r);
}

std::vector<SpectralSample> spectral_measure(const Mat& b, const Mat& rho,
                                             double eps) {
  if (!is_hermitian(b))
    throw std::invalid_argument("spectral_measure: observable not Hermitian");
  if (eps < 0) throw std::invalid_argument("spectral_measure: negative precision");
  Eigen::SelfAdjointEigenSolver<Mat> es(b);
  std::vector<SpectralSample> out;
  for (int k = 0; k < b.rows(); ++k) {
    Vec v = es.eigenvectors().col(k);
    double p = (v.adjoint() * rho * v)(0).real();
    out.push_back({es.eigenvalues()(k), p < 0 ? 0.0 : p});
  }
  return out;
}

double spectral_mean(const std::vector<SpectralSample>& samples) {
  double m = 0;
  for (const auto& s : samples) m += s.value * s.probability;
  return m;
}

}  // namespace cg

// SPDX-License-Identifier: Apache-2.0
#include "cg/linalg.hpp"

namespace cg {

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  Mat id = Mat::Identity(m.rows(), m.cols());
  return max_abs(m.adjoint() * m - id) <= tol;
}

bool is_projector(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return is_hermitian(m, tol) && max_abs(m * m - m) <= tol;
}

bool is_identity(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - Mat::Identity(m.rows(), m.cols())) <= tol;
}

double min_eigenvalue(const Mat& hermitian) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double spectral_norm_hermitian(const Mat& hermitian) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat matrix_abs_sq(const Mat& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("matrix_abs_sq: matrix must be square");
  return a.adjoint() * a;
}

double trace_distance(const Mat& rho, const Mat& sigma) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho - sigma, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace cg

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace cg {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Max-norm tolerance for all Hermitian / unitary / projector audits.
inline constexpr double kOpTol = 1e-10;

// Thrown when an operation would exceed the dense-simulation budget
// (dimensions beyond 2^12).
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a prover declares ciphertext dependence the exact-value
// machinery cannot enumerate.
struct unsupported_strategy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double max_abs(const Mat& m);
bool is_hermitian(const Mat& m, double tol = kOpTol);
bool is_unitary(const Mat& m, double tol = kOpTol);
bool is_projector(const Mat& m, double tol = kOpTol);
bool is_identity(const Mat& m, double tol = kOpTol);

// Eigenvalue helpers for Hermitian inputs.
double min_eigenvalue(const Mat& hermitian);
double spectral_norm_hermitian(const Mat& hermitian);

Mat kron(const Mat& a, const Mat& b);

// |A|^2 = A^dagger A. Requires a square input.
Mat matrix_abs_sq(const Mat& a);

// (1/2) ||rho - sigma||_1 for Hermitian rho, sigma.
double trace_distance(const Mat& rho, const Mat& sigma);

}  // namespace cg

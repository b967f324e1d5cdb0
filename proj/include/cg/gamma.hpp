// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cg/compiler.hpp"

namespace cg {

// Variable order used throughout the degree-2 machinery.
enum class GVar { A0 = 0, A1 = 1, B0 = 2, B1 = 3 };

// The modified covariance matrix: Hermitian with unit diagonal, but not
// necessarily positive semidefinite.
struct GammaMatrix {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();

  cplx at(GVar i, GVar j) const {
    return m(static_cast<int>(i), static_cast<int>(j));
  }
  void validate(double tol = kOpTol) const;
};

// nu*1 + homogeneous degree-2 polynomial in the four game variables. The
// type is the whole story: anything expressible here is in pseudo-expectation
// form, anything else is rejected by construction.
struct Poly2 {
  cplx constant{0, 0};
  Eigen::Matrix4cd quad = Eigen::Matrix4cd::Zero();  // coefficient of O_i O_j

  Poly2 operator+(const Poly2& o) const;
  Poly2 operator-(const Poly2& o) const;
  Poly2 operator*(cplx s) const;

  static Poly2 one();
  static Poly2 product(GVar i, GVar j);
  static Poly2 commutator(GVar i, GVar j);
  static Poly2 square_deficit(GVar i);   // 1 - O_i^2
  static Poly2 chsh_polynomial();        // A0B0 + A0B1 + A1B0 - A1B1
  static Poly2 chsh_game_polynomial();   // 1/2 + (1/8) p_CHSH
};

cplx pseudo_expectation(const GammaMatrix& gamma, const Poly2& p);

// B^y = sum_b (-1)^b B^y_b on the prover's full space; requires binary
// outcomes.
Mat bob_observable(const CompiledProverStrategy& prover, uint64_t y);

// Builds Gamma from a CHSH-shaped prover. AA off-diagonal entries are 0 and
// the AA diagonal is 1; AB entries are the decrypted-answer correlators; BB
// entries average the two plaintext classes uniformly.
GammaMatrix gamma_from_strategy(const CompiledProverStrategy& prover);

// Throws unless the prover has classes {0,1}, 1-bit answers, and two Bob
// questions with binary outcomes.
void check_chsh_shape(const CompiledProverStrategy& prover);

}  // namespace cg

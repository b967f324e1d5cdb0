// SPDX-License-Identifier: Apache-2.0
#include "cg/gamma.hpp"

namespace cg {

void GammaMatrix::validate(double tol) const {
  for (int i = 0; i < 4; ++i) {
    if (std::abs(m(i, i) - cplx(1, 0)) > tol)
      throw std::invalid_argument("GammaMatrix: diagonal entry != 1");
    for (int j = 0; j < 4; ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol)
        throw std::invalid_argument("GammaMatrix: not Hermitian");
  }
}

Poly2 Poly2::operator+(const Poly2& o) const {
  return Poly2{constant + o.constant, quad + o.quad};
}
Poly2 Poly2::operator-(const Poly2& o) const {
  return Poly2{constant - o.constant, quad - o.quad};
}
Poly2 Poly2::operator*(cplx s) const { return Poly2{constant * s, quad * s}; }

Poly2 Poly2::one() { return Poly2{cplx(1, 0), Eigen::Matrix4cd::Zero()}; }

Poly2 Poly2::product(GVar i, GVar j) {
  Poly2 p;
  p.quad(static_cast<int>(i), static_cast<int>(j)) = 1.0;
  return p;
}

Poly2 Poly2::commutator(GVar i, GVar j) {
  return product(i, j) - product(j, i);
}

Poly2 Poly2::square_deficit(GVar i) { return one() - product(i, i); }

Poly2 Poly2::chsh_polynomial() {
  return product(GVar::A0, GVar::B0) + product(GVar::A0, GVar::B1) +
         product(GVar::A1, GVar::B0) - product(GVar::A1, GVar::B1);
}

Poly2 Poly2::chsh_game_polynomial() {
  return one() * cplx(0.5, 0) + chsh_polynomial() * cplx(0.125, 0);
}

cplx pseudo_expectation(const GammaMatrix& gamma, const Poly2& p) {
  cplx v = p.constant;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v += p.quad(i, j) * gamma.m(i, j);
  return v;
}

void check_chsh_shape(const CompiledProverStrategy& prover) {
  if (prover.first_round.size() != 2 || !prover.first_round.count(0) ||
      !prover.first_round.count(1))
    throw std::invalid_argument("prover is not CHSH-shaped: need classes {0,1}");
  for (const auto& [cls, fam] : prover.first_round) {
    (void)cls;
    for (const auto& op : fam.ops)
      if (op.answer > 1)
        throw std::invalid_argument("prover is not CHSH-shaped: non-binary answer");
  }
  if (prover.second_round.size() != 2 || !prover.second_round.count(0) ||
      !prover.second_round.count(1))
    throw std::invalid_argument("prover is not CHSH-shaped: need Bob questions {0,1}");
  for (const auto& [y, pvm] : prover.second_round) {
    (void)y;
    for (uint64_t b : pvm.outcomes)
      if (b > 1)
        throw std::invalid_argument("prover is not CHSH-shaped: non-binary Bob outcome");
  }
}

Mat bob_observable(const CompiledProverStrategy& prover, uint64_t y) {
  const auto& pvm = prover.second_round.at(y);
  Mat obs = Mat::Zero(prover.state.dim(), prover.state.dim());
  for (size_t i = 0; i < pvm.outcomes.size(); ++i) {
    if (pvm.outcomes[i] > 1)
      throw std::invalid_argument("bob_observable: non-binary outcome");
    obs += (pvm.outcomes[i] ? -1.0 : 1.0) * pvm.projectors[i];
  }
  return obs;
}

GammaMatrix gamma_from_strategy(const CompiledProverStrategy& prover) {
  check_chsh_shape(prover);
  Mat b[2] = {bob_observable(prover, 0), bob_observable(prover, 1)};
  GammaMatrix gamma;
  gamma.m(0, 0) = gamma.m(1, 1) = 1.0;

  for (int x = 0; x < 2; ++x) {
    auto states = post_measurement_states(prover, x);
    for (int y = 0; y < 2; ++y) {
      cplx corr = 0;
      for (const auto& [a, psi] : states) {
        cplx v = (psi.amps.adjoint() * b[y] * psi.amps)(0);
        corr += (a ? -1.0 : 1.0) * v;
      }
      gamma.m(x, 2 + y) = corr;
      gamma.m(2 + y, x) = std::conj(corr);
    }
    // BB block, averaged uniformly over the plaintext class.
    for (int y = 0; y < 2; ++y)
      for (int yp = 0; yp < 2; ++yp) {
        cplx v = 0;
        for (const auto& [a, psi] : states) {
          (void)a;
          v += (psi.amps.adjoint() * b[y] * b[yp] * psi.amps)(0);
        }
        gamma.m(2 + y, 2 + yp) += 0.5 * v;
      }
  }
  gamma.validate();
  return gamma;
}

}  // namespace cg

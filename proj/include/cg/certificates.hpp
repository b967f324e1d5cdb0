// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cg/gamma.hpp"

namespace cg {

// omega* = 1/2 + sqrt2/4 together with the square terms of the CHSH
// decomposition p_game = omega* - sum_j b_j q_j^dagger q_j (+ constraint
// terms with vanishing pseudo-expectation).
struct SoSDecomposition {
  double omega_star;
  std::vector<Eigen::Vector4cd> squares;  // coefficients over (A0,A1,B0,B1)
  std::vector<double> weights;            // b_j >= 0

  static SoSDecomposition chsh();
  double quadratic_form(const GammaMatrix& gamma, size_t j) const;
};

// Frobenius residual of q1^2 + q2^2 = 4*1 - sqrt2 * p_CHSH over seeded
// random commuting instantiations (random binary observables on C^2 (x) C^2).
double verify_nonlocal_sos_identity(int trials, uint64_t seed);

struct WinProbDecomposition {
  double p_win;          // exact compiled value
  double reconstructed;  // omega* - sum_j b_j q_j^dagger Gamma q_j
  double residual;       // |p_win - reconstructed|
  double qform_sum;      // q1 Gamma q1 + q2 Gamma q2
  double qform_identity_residual;  // |qform_sum - 8 sqrt2 (omega* - p_win)|
};
WinProbDecomposition win_prob_decomposition_check(const CompiledProverStrategy& prover);

// E_mu[(a-b)^2] where a = (-1)^{Dec(alpha)} after the class-x measurement
// and b is an eigenvalue of (B0 + sign B1)/sqrt2 measured on the
// post-measurement state.
double mu_expectation(const CompiledProverStrategy& prover, int x, int sign);

struct MacroscopicDiagnostics {
  double delta0_plus, delta0_minus;  // <(B0 +- B1)^2>_0
  double delta1_plus, delta1_minus;
  double corr0_plus, corr0_minus;    // <A_x, B0 +- B1>
  double corr1_plus, corr1_minus;
  double p_win;
  double jensen_slack_max;   // max over the four pairs of |corr|^2 - Delta
  double tight1_residual;    // |Delta1(+) + Delta1(-) - 4|
};
MacroscopicDiagnostics macroscopic_diagnostics(const CompiledProverStrategy& prover);

// E_{c in class 0} sum_alpha <psi| A^dagger |{B0,B1}|^2 A |psi>.
double anticommutator_residual(const CompiledProverStrategy& prover);

// Commutation-game-shaped prover: sum_alpha <psi| A^dagger |[B0,B1]|^2 A |psi>.
double commutator_residual(const CompiledProverStrategy& prover);

using PlaintextDistribution = std::vector<std::pair<uint64_t, double>>;

// | E_{x<-D1} <M after first round> - E_{x<-D2} <...> | for an observable M
// with spectrum in [0,1]. The ideal scheme offers no security, so every
// indistinguishability term is measured explicitly through this quantity.
double distinguisher_advantage(const CompiledProverStrategy& prover,
                               const PlaintextDistribution& d1,
                               const PlaintextDistribution& d2,
                               const Mat& observable);

// Measured slack for the q_j claims: advantage between the two plaintext
// classes on M = (B0 + sign B1)^2 / 4.
double claims_slack(const CompiledProverStrategy& prover, int sign);

}  // namespace cg

// SPDX-License-Identifier: Apache-2.0
#include "cg/certificates.hpp"

#include <cmath>

namespace cg {

SoSDecomposition SoSDecomposition::chsh() {
  SoSDecomposition s;
  s.omega_star = 0.5 + std::sqrt(2.0) / 4.0;
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Vector4cd q1, q2;
  q1 << 1.0, 0.0, -r, -r;  // A0 - (B0 + B1)/sqrt2
  q2 << 0.0, 1.0, -r, r;   // A1 - (B0 - B1)/sqrt2
  s.squares = {q1, q2};
  s.weights = {std::sqrt(2.0) / 16.0, std::sqrt(2.0) / 16.0};
  return s;
}

double SoSDecomposition::quadratic_form(const GammaMatrix& gamma, size_t j) const {
  const Eigen::Vector4cd& q = squares.at(j);
  return (q.adjoint() * gamma.m * q)(0).real();
}

double verify_nonlocal_sos_identity(int trials, uint64_t seed) {
  Rng rng(seed);
  const double r = std::sqrt(2.0);
  double worst = 0;
  for (int t = 0; t < trials; ++t) {
    Mat id2 = Mat::Identity(2, 2);
    Mat a0 = kron(random_binary_observable(2, rng), id2);
    Mat a1 = kron(random_binary_observable(2, rng), id2);
    Mat b0 = kron(id2, random_binary_observable(2, rng));
    Mat b1 = kron(id2, random_binary_observable(2, rng));
    Mat q1 = a0 - (b0 + b1) / r;
    Mat q2 = a1 - (b0 - b1) / r;
    Mat pchsh = a0 * b0 + a0 * b1 + a1 * b0 - a1 * b1;
    Mat lhs = q1 * q1 + q2 * q2;
    Mat rhs = 4.0 * Mat::Identity(4, 4) - r * pchsh;
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

WinProbDecomposition win_prob_decomposition_check(const CompiledProverStrategy& prover) {
  auto sos = SoSDecomposition::chsh();
  auto gamma = gamma_from_strategy(prover);
  auto proto = compile(chsh_game(), std::make_shared<IdealQheScheme>(), 128);
  WinProbDecomposition out;
  out.p_win = compiled_value_exact(proto, prover);
  double q1 = sos.quadratic_form(gamma, 0);
  double q2 = sos.quadratic_form(gamma, 1);
  out.qform_sum = q1 + q2;
  out.reconstructed = sos.omega_star - sos.weights[0] * q1 - sos.weights[1] * q2;
  out.residual = std::abs(out.p_win - out.reconstructed);
  out.qform_identity_residual =
      std::abs(out.qform_sum - 8 * std::sqrt(2.0) * (sos.omega_star - out.p_win));
  return out;
}

double mu_expectation(const CompiledProverStrategy& prover, int x, int sign) {
  check_chsh_shape(prover);
  Mat obs = (bob_observable(prover, 0) +
             static_cast<double>(sign) * bob_observable(prover, 1)) /
            std::sqrt(2.0);
  Eigen::SelfAdjointEigenSolver<Mat> es(obs);
  double total = 0;
  for (const auto& [a, psi] : post_measurement_states(prover, x)) {
    double av = a ? -1.0 : 1.0;
    Vec overlaps = es.eigenvectors().adjoint() * psi.amps;
    for (int k = 0; k < overlaps.size(); ++k) {
      double diff = av - es.eigenvalues()(k);
      total += diff * diff * std::norm(overlaps(k));
    }
  }
  return total < 0 ? 0.0 : total;
}

MacroscopicDiagnostics macroscopic_diagnostics(const CompiledProverStrategy& prover) {
  check_chsh_shape(prover);
  Mat b0 = bob_observable(prover, 0), b1 = bob_observable(prover, 1);
  Mat plus = b0 + b1, minus = b0 - b1;
  Mat plus2 = plus * plus, minus2 = minus * minus;

  MacroscopicDiagnostics d{};
  double* deltas[2][2] = {{&d.delta0_plus, &d.delta0_minus},
                          {&d.delta1_plus, &d.delta1_minus}};
  double* corrs[2][2] = {{&d.corr0_plus, &d.corr0_minus},
                         {&d.corr1_plus, &d.corr1_minus}};
  for (int x = 0; x < 2; ++x) {
    auto states = post_measurement_states(prover, x);
    for (int s = 0; s < 2; ++s) {
      const Mat& lin = s == 0 ? plus : minus;
      const Mat& sq = s == 0 ? plus2 : minus2;
      double delta = 0, corr = 0;
      for (const auto& [a, psi] : states) {
        delta += (psi.amps.adjoint() * sq * psi.amps)(0).real();
        corr += (a ? -1.0 : 1.0) * (psi.amps.adjoint() * lin * psi.amps)(0).real();
      }
      *deltas[x][s] = delta;
      *corrs[x][s] = corr;
    }
  }
  auto proto = compile(chsh_game(), std::make_shared<IdealQheScheme>(), 128);
  d.p_win = compiled_value_exact(proto, prover);
  d.jensen_slack_max = std::max(
      std::max(d.corr0_plus * d.corr0_plus - d.delta0_plus,
               d.corr0_minus * d.corr0_minus - d.delta0_minus),
      std::max(d.corr1_plus * d.corr1_plus - d.delta1_plus,
               d.corr1_minus * d.corr1_minus - d.delta1_minus));
  d.tight1_residual = std::abs(d.delta1_plus + d.delta1_minus - 4.0);
  return d;
}

double anticommutator_residual(const CompiledProverStrategy& prover) {
  check_chsh_shape(prover);
  Mat b0 = bob_observable(prover, 0), b1 = bob_observable(prover, 1);
  Mat anti = b0 * b1 + b1 * b0;
  Mat anti_sq = matrix_abs_sq(anti);
  double total = 0;
  for (const auto& [a, psi] : post_measurement_states(prover, 0)) {
    (void)a;
    total += (psi.amps.adjoint() * anti_sq * psi.amps)(0).real();
  }
  return total < 0 ? 0.0 : total;
}

double commutator_residual(const CompiledProverStrategy& prover) {
  if (prover.first_round.size() != 1 || !prover.first_round.count(0))
    throw std::invalid_argument("commutator_residual: expected a single class 0");
  Mat b0 = bob_observable(prover, 0), b1 = bob_observable(prover, 1);
  Mat comm_sq = matrix_abs_sq(b0 * b1 - b1 * b0);
  double total = 0;
  for (const auto& [a, psi] : post_measurement_states(prover, 0)) {
    (void)a;
    total += (psi.amps.adjoint() * comm_sq * psi.amps)(0).real();
  }
  return total < 0 ? 0.0 : total;
}

double distinguisher_advantage(const CompiledProverStrategy& prover,
                               const PlaintextDistribution& d1,
                               const PlaintextDistribution& d2,
                               const Mat& observable) {
  Eigen::SelfAdjointEigenSolver<Mat> es(observable, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kOpTol ||
      es.eigenvalues().maxCoeff() > 1 + kOpTol)
    throw std::invalid_argument("distinguisher_advantage: spectrum outside [0,1]");
  auto mean = [&](const PlaintextDistribution& d) {
    double v = 0;
    for (const auto& [cls, w] : d)
      for (const auto& [a, psi] : post_measurement_states(prover, cls)) {
        (void)a;
        v += w * (psi.amps.adjoint() * observable * psi.amps)(0).real();
      }
    return v;
  };
  return std::abs(mean(d1) - mean(d2));
}

double claims_slack(const CompiledProverStrategy& prover, int sign) {
  Mat b0 = bob_observable(prover, 0), b1 = bob_observable(prover, 1);
  Mat lc = b0 + static_cast<double>(sign) * b1;
  return distinguisher_advantage(prover, {{0, 1.0}}, {{1, 1.0}}, lc * lc / 4.0);
}

}  // namespace cg

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "cg/compiler.hpp"
#include "cg/hamiltonian.hpp"

namespace cg {

// One Alice question of the verification protocol. Serialized with fixed
// padding so every variant has the same length.
struct AliceQuestion {
  enum class Kind { Chsh, Commutation, Teleport };
  Kind kind = Kind::Teleport;
  PauliMask a, b;
  int x = 0;

  static AliceQuestion chsh(const PauliMask& a, const PauliMask& b, int x);
  static AliceQuestion commutation(const PauliMask& a, const PauliMask& b);
  static AliceQuestion teleport(int n);

  int n() const { return a.n; }
  int answer_bits() const;
  std::vector<uint8_t> serialize() const;
  uint64_t key() const;  // dense map key
};

struct ThmMainParams {
  double kappa, nu, gap;
};
// kappa = min(1/2, (beta-alpha)^2/64); nu = gap = kappa (beta-alpha)/8.
ThmMainParams thm_main_parameters(double alpha, double beta);

struct ProtocolConfig {
  int n = 2;
  int lambda = 128;
  double alpha = -0.5, beta = 0.5;
  double kappa = 0;  // 0 -> default rule
  uint64_t seed = 0;

  double effective_kappa() const;
};

// The prover's two second-round measurements: a basis change followed by a
// standard-basis measurement of the designated qubits. Z(a), X(b) are the
// derived binary observables; linearity W(a)W(a') = W(a+a') holds by
// construction.
struct BobObservables {
  int n = 0;
  int total_qubits = 0;
  std::vector<int> measured_qubits;
  Mat u_z, u_x;

  Mat w_obs(int q_b, const PauliMask& mask) const;
  ProjectiveMeasurement pvm(int q_b) const;
};

// Prover model for the verification protocol: a state, a Kraus family per
// Alice-question class, and the two Bob measurements.
struct VerifierProver {
  std::string id = "prover";
  int n = 0;
  StateVector psi;
  BobObservables bob;
  std::function<KrausFamily(const AliceQuestion&)> kraus_gen;

  const KrausFamily& family(const AliceQuestion& q) const;

 private:
  mutable std::map<uint64_t, KrausFamily> cache_;
};

// Honest prover layout: Alice qubits [0,n), Bob [n,2n), witness [2n,3n),
// purifier [3n,4n) when the witness is mixed.
VerifierProver honest_verifier_prover(const XXZZHamiltonian& h, const Mat& witness);
KrausFamily honest_alice_kraus(const AliceQuestion& q, int n, int total_qubits);

// Adversaries.
VerifierProver lazy_verifier_prover(const XXZZHamiltonian& h);
VerifierProver swapped_bob_prover(const XXZZHamiltonian& h, const Mat& witness);
VerifierProver rotated_bob_prover(const XXZZHamiltonian& h, const Mat& witness,
                                  double theta);

std::pair<AliceQuestion, int> sample_question(const ProtocolConfig& cfg,
                                              const QuestionDistributions& dists,
                                              Rng& rng);

// Honest Bob: measure every qubit of the register in the Z (q_b = 0) or
// X (q_b = 1) basis. Collapses the register and returns the n outcome bits.
uint32_t honest_bob_measurement(int q_b, StateVector& reg, Rng& rng);

// Verdict of step 6; the teleport branch consumes verifier randomness.
bool verdict(const AliceQuestion& q, int q_b, uint64_t s_a, uint32_t s_b,
             const XXZZHamiltonian& h, Rng& rng);

struct SubtestValues {
  std::optional<double> p_chsh, p_com;  // empty when the X marginal is empty
  double p_teleport = 0;
  std::optional<double> total;  // (1-k)/2 (chsh+com) + k teleport
};
SubtestValues protocol_values(const VerifierProver& prover,
                              const XXZZHamiltonian& h, const ProtocolConfig& cfg);

struct CompletenessBreakdown {
  SubtestValues subtests;
  double witness_energy = 0;
  double formula_simulated = 0;  // (1-k)/2 (w*+1) + k (3/4 - E/4), the oracle form
  double formula_alt = 0;      // (1-k)/2 (w*+1) + k (1 - E/4), the alternative normalization
};
CompletenessBreakdown completeness_exact(const XXZZHamiltonian& h,
                                         const Mat& witness,
                                         const ProtocolConfig& cfg);

struct MonteCarloStats {
  long rounds = 0;
  long accepts = 0;
  long subtest_rounds[3] = {0, 0, 0};  // chsh, commutation, teleport
  long subtest_accepts[3] = {0, 0, 0};
  long checked_x = 0, checked_z = 0;   // teleport rounds that ran a check
  double corrected_x_sum = 0, corrected_z_sum = 0;

  double acceptance() const {
    return rounds ? static_cast<double>(accepts) / rounds : 0.0;
  }
};
MonteCarloStats run_verifier_rounds(const ProtocolConfig& cfg,
                                    const XXZZHamiltonian& h,
                                    const VerifierProver& prover, long rounds,
                                    Rng& rng);

struct SoundnessReport {
  std::optional<double> p_chsh, p_com;
  double p_teleport = 0;
  double eps_chsh = 0, eps_com = 0;   // shortfalls, clamped at 0
  double anticom_residual = 0;        // (i)
  double com_residual = 0;            // (ii)
  double phase_residual = 0;          // (iii)
  double anticom_bound = 0;           // 96 sqrt2 eps + 12 measured slack
  double com_bound = 0;               // 128 eps
  double phase_bound = 0;             // (i+ii)/2 + measured slack
  double slack_anticom = 0, slack_com = 0, slack_claims = 0;
  double zxz_max = 0;                 // max over terms and (u1,u2)
  double zxz_bound = 0;               // sqrt(phase residual)
  double e_hx = 0, e_hz = 0;          // corrected energy estimates
  double extracted_trace = 0;
  double extracted_min_eig = 0;
  double extracted_energy = 0;        // tr[H rho]
  double single_rho_z_residual = 0;   // |E_{a<-D_Z} tr[sZ(a) rho] - E[H_Z]|
  double single_rho_x_residual = 0;
};

SoundnessReport subtest_residuals(const VerifierProver& prover,
                                  const XXZZHamiltonian& h);

// Conditioned expectation of (-1)^{a.b} Z(a)X(b)Z(a) - X(b) over teleport
// post-measurement branches with Dec(alpha)_i = u1, Dec(alpha)_j = u2.
double zxz_residual(const VerifierProver& prover, const QuestionDistributions& d,
                    int u1, int u2, int i, int j);

std::pair<double, double> energy_estimates(const VerifierProver& prover,
                                           const QuestionDistributions& d);

Mat swap_isometry(const BobObservables& bob);

struct IsometryCheck {
  double lhs, rhs, residual;
};
IsometryCheck isometry_pauli_check(const BobObservables& bob, const Vec& phi,
                                   const PauliMask& mask, bool x_type);

// rho = sum_alpha sX(x) sZ(z) rho_alpha sZ(z) sX(x) built through the SWAP
// isometry from the teleport branches.
Mat extract_witness(const VerifierProver& prover, const QuestionDistributions& d);

}  // namespace cg

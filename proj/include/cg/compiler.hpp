// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>

#include "cg/games.hpp"
#include "cg/qhe.hpp"

namespace cg {

// One first-round branch: the (generally non-Hermitian) operator
// A_alpha = U_alpha Pi_alpha together with the decrypted answer it reports.
struct KrausOp {
  uint64_t answer = 0;
  Mat m;
};

struct KrausFamily {
  std::vector<KrausOp> ops;
  int answer_bits = 1;

  // {A_alpha^dagger A_alpha}_alpha must form a projective measurement.
  void validate(double tol = kOpTol) const;
};

struct CompiledProtocol {
  NonlocalGame game;
  std::shared_ptr<IdealQheScheme> scheme;
  int lambda = 128;
};

CompiledProtocol compile(const NonlocalGame& g,
                         std::shared_ptr<IdealQheScheme> scheme, int lambda);

// Single-prover strategy for a compiled game. The ideal scheme's ciphertexts
// differ only by nonce, so first-round behavior is declared per plaintext
// class; nonce-dependent strategies are rejected by the exact-value machinery.
struct CompiledProverStrategy {
  std::string id = "prover";
  int num_qubits = 0;
  StateVector state;
  std::map<uint64_t, KrausFamily> first_round;            // plaintext class
  std::map<uint64_t, ProjectiveMeasurement> second_round; // question y
  bool nonce_dependent = false;

  void validate(double tol = kOpTol) const;
  const KrausFamily& family(uint64_t cls) const { return first_round.at(cls); }
};

// Realizes the Alice circuit of a strategy through the scheme's Eval: the
// first-round family for class x is the x-controlled Alice PVM extended by
// identity; the second round is Bob's PVMs extended by identity.
CompiledProverStrategy honest_compiled_prover(const QuantumStrategy& s,
                                              const CompiledProtocol& p);

// Exact acceptance probability, averaging over ciphertext randomness
// analytically via plaintext classes.
double compiled_value_exact(const CompiledProtocol& p,
                            const CompiledProverStrategy& prover);

struct Transcript {
  uint64_t x = 0, y = 0;
  Ciphertext c, alpha;
  uint64_t a = 0;  // Dec(alpha)
  uint64_t b = 0;
  bool accept = false;
};

Transcript run_round(const CompiledProtocol& p,
                     const CompiledProverStrategy& prover, Rng& rng);

std::string transcript_to_json_line(const Transcript& t);

// A^c = sum_alpha (-1)^{Dec(alpha)} A_alpha^dagger A_alpha; requires
// single-bit decrypted answers.
BinaryObservable decrypted_observable(const CompiledProverStrategy& prover,
                                      uint64_t cls);

// psi^c_alpha = A_alpha |psi>, subnormalized so that ||psi^c_alpha||^2 = Pr[alpha].
std::vector<std::pair<uint64_t, StateVector>> post_measurement_states(
    const CompiledProverStrategy& prover, uint64_t cls);

}  // namespace cg

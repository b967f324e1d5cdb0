// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cg/measurement.hpp"

namespace cg {

// Two-player one-round game. Questions x, y and answers a, b are bitstrings
// packed into integers (bit i = bit i of the string).
struct NonlocalGame {
  int n1 = 0, n2 = 0;  // question bit lengths (Alice, Bob)
  int m1 = 0, m2 = 0;  // answer bit lengths
  std::vector<std::pair<std::pair<uint64_t, uint64_t>, double>> questions;
  std::function<bool(uint64_t x, uint64_t y, uint64_t a, uint64_t b)> predicate;
  std::string predicate_id;  // key into the fixed registry, for serialization

  void validate() const;  // weights sum to 1 within 1e-12
};

// A strategy over H_A (x) H_B. Alice's space is the first nA qubits of the
// shared state, Bob's the remaining nB. nA may be 0 (trivial Alice space).
struct QuantumStrategy {
  int alice_qubits = 0;
  int bob_qubits = 0;
  StateVector state;
  std::map<uint64_t, ProjectiveMeasurement> alice_pvms;  // on H_A
  std::map<uint64_t, ProjectiveMeasurement> bob_pvms;    // on H_B

  int dim_a() const { return 1 << alice_qubits; }
  int dim_b() const { return 1 << bob_qubits; }
  void validate() const;
};

double quantum_value(const NonlocalGame& g, const QuantumStrategy& s);

// Exact maximum over deterministic strategy pairs. Requires the enumeration
// 2^{m1 2^{n1}} * 2^{m2 2^{n2}} to be at most 2^24.
double classical_value_bruteforce(const NonlocalGame& g);

NonlocalGame chsh_game();
NonlocalGame commutation_game();
NonlocalGame always_accept_game();
NonlocalGame always_reject_game();

// Alice measures sigma_Z / sigma_X, Bob (sigma_Z +- sigma_X)/sqrt2, on one
// EPR pair. Attains cos^2(pi/8).
QuantumStrategy canonical_chsh_strategy();

// Bob observables rotated to cos(phi) Z +- sin(phi) X; phi = pi/4 recovers
// the canonical strategy. Value is 1/2 + (cos phi + sin phi)/4.
QuantumStrategy rotated_chsh_strategy(double phi);

// Deterministic CHSH strategy answering fixed bits.
QuantumStrategy constant_chsh_strategy(int a, int b);

// Honest commutation-game strategy: trivial Alice space, Bob holds |0> and
// B^0 = B^1 = sigma_Z; Alice deterministically reports both outcomes.
QuantumStrategy honest_commutation_strategy();

// 1/2 + (1/(2 * #pairs)) * sum signs * correlators; for the 4-pair CHSH shape
// this is 1/2 + (1/8) sum.
double xor_game_polynomial_value(const std::map<std::pair<uint64_t, uint64_t>, double>& correlators,
                                 const std::map<std::pair<uint64_t, uint64_t>, int>& signs);

std::string game_to_json(const NonlocalGame& g);
NonlocalGame game_from_json(const std::string& text);

double chsh_quantum_value();  // cos^2(pi/8) = 1/2 + sqrt2/4

}  // namespace cg

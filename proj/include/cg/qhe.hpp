// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "cg/measurement.hpp"

namespace cg {

struct SecretKey {
  uint64_t id = 0;
  int lambda = 0;
};

// Opaque handle plus a fresh nonce. The handle resolves to the plaintext
// only through the issuing scheme's table.
struct Ciphertext {
  uint64_t key_id = 0;
  uint64_t handle = 0;
  std::vector<uint8_t> nonce;
  int plaintext_bits = 0;
};

// A quantum circuit with classical output, given as the projective
// measurement it applies to the register for each classical input x.
struct ClassicalOutputCircuit {
  int input_bits = 0;
  int output_bits = 0;
  std::function<ProjectiveMeasurement(uint64_t x)> branch;
};

// Ideal-functionality homomorphic encryption: information-theoretically
// correct, deliberately without any security. Eval resolves the plaintext
// internally, applies the plaintext-controlled measurement, and re-encrypts
// the classical outcome under the same key.
class IdealQheScheme {
 public:
  explicit IdealQheScheme(uint64_t seed = 0x9e3779b97f4a7c15ull);

  SecretKey gen(int lambda);
  Ciphertext enc(const SecretKey& sk, uint64_t plaintext, int nbits);
  uint64_t dec(const SecretKey& sk, const Ciphertext& ct) const;

  struct EvalBranch {
    Ciphertext out;
    double probability;
    StateVector post;  // renormalized when probability > 0
  };
  std::vector<EvalBranch> eval(const ClassicalOutputCircuit& circuit,
                               const StateVector& reg, const Ciphertext& ct);

  // Plaintext-class resolution used by the compiler's exact averages; the
  // ideal scheme's ciphertexts differ only by nonce within a class.
  uint64_t plaintext_class(const Ciphertext& ct) const;

 private:
  Ciphertext enc_locked(uint64_t key_id, int lambda, uint64_t plaintext, int nbits);

  mutable std::mutex mu_;  // single writer; the table is append-only
  uint64_t next_key_ = 1;
  uint64_t next_handle_ = 1;
  Rng nonce_rng_;
  struct KeyRecord {
    int lambda;
    std::unordered_map<uint64_t, std::pair<uint64_t, int>> table;  // handle -> (pt, bits)
  };
  std::unordered_map<uint64_t, KeyRecord> keys_;
};

// Trace distance between the two correctness games of the QHE definition:
// run the circuit in the clear on register A of psi_ab vs. enc/eval/dec.
// Output ensembles pair the classical result with the residual B register.
double correctness_audit(IdealQheScheme& scheme,
                         const ClassicalOutputCircuit& circuit,
                         const StateVector& psi_ab, int a_qubits, uint64_t x);

}  // namespace cg

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include "cg/linalg.hpp"

namespace cg {

// Dense simulation budget: at most 2^12 amplitudes.
inline constexpr int kMaxQubits = 12;

// Amplitude-index convention: qubit 0 is the most significant bit of the
// basis-state index. All classical masks and answer strings below use the
// opposite, qubit-i-is-bit-i order; this helper is the single crossing point.
inline uint32_t amp_bit(int n, int qubit) {
  return 1u << (n - 1 - qubit);
}

// An n-bit string indexing a Z- or X-type Pauli operator. Bit i of `bits`
// refers to qubit i.
struct PauliMask {
  int n = 0;
  uint32_t bits = 0;

  PauliMask() = default;
  PauliMask(int n_, uint32_t bits_);

  int bit(int i) const { return (bits >> i) & 1; }
  int weight() const { return std::popcount(bits); }

  // Symplectic-style inner product a.b mod 2.
  int dot(const PauliMask& other) const;

  // Exact bitmask composition sigma_W(a) sigma_W(a') = sigma_W(a ^ a').
  PauliMask operator^(const PauliMask& other) const;
  bool operator==(const PauliMask& other) const = default;

  // Qubit-0-first bitstring, e.g. "110" for e_0 + e_1 on 3 qubits.
  std::string to_string() const;

  static PauliMask zero(int n) { return PauliMask(n, 0); }
  static PauliMask two_local(int n, int i, int j);
};

// sigma_Z(a): diagonal with entries (-1)^{|a & s|} over basis states s.
Mat pauli_z(const PauliMask& a);

// sigma_X(b): permutation s -> s xor b.
Mat pauli_x(const PauliMask& b);

// Convert a qubit-indexed mask into an amplitude-index mask for an n-qubit
// register embedded at `offset` inside a `total`-qubit space.
uint32_t mask_to_amp_bits(const PauliMask& m, int total, int offset);

}  // namespace cg

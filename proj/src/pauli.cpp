// SPDX-License-Identifier: Apache-2.0
#include "cg/pauli.hpp"

namespace cg {

PauliMask::PauliMask(int n_, uint32_t bits_) : n(n_), bits(bits_) {
  if (n < 0 || n > 31) throw std::invalid_argument("PauliMask: bad length");
  if (n < 32 && (bits >> n) != 0)
    throw std::invalid_argument("PauliMask: bits exceed stated length");
}

int PauliMask::dot(const PauliMask& other) const {
  if (n != other.n) throw std::invalid_argument("PauliMask::dot: length mismatch");
  return std::popcount(bits & other.bits) & 1;
}

PauliMask PauliMask::operator^(const PauliMask& other) const {
  if (n != other.n) throw std::invalid_argument("PauliMask::xor: length mismatch");
  return PauliMask(n, bits ^ other.bits);
}

std::string PauliMask::to_string() const {
  std::string s(n, '0');
  for (int i = 0; i < n; ++i) s[i] = bit(i) ? '1' : '0';
  return s;
}

PauliMask PauliMask::two_local(int n, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw std::invalid_argument("PauliMask::two_local: bad indices");
  return PauliMask(n, (1u << i) | (1u << j));
}

uint32_t mask_to_amp_bits(const PauliMask& m, int total, int offset) {
  uint32_t out = 0;
  for (int i = 0; i < m.n; ++i)
    if (m.bit(i)) out |= amp_bit(total, offset + i);
  return out;
}

Mat pauli_z(const PauliMask& a) {
  if (a.n > kMaxQubits)
    throw resource_error("pauli_z: more than 12 qubits");
  const uint32_t dim = 1u << a.n;
  const uint32_t amask = mask_to_amp_bits(a, a.n, 0);
  Mat m = Mat::Zero(dim, dim);
  for (uint32_t s = 0; s < dim; ++s)
    m(s, s) = (std::popcount(s & amask) & 1) ? -1.0 : 1.0;
  return m;
}

Mat pauli_x(const PauliMask& b) {
  if (b.n > kMaxQubits)
    throw resource_error("pauli_x: more than 12 qubits");
  const uint32_t dim = 1u << b.n;
  const uint32_t bmask = mask_to_amp_bits(b, b.n, 0);
  Mat m = Mat::Zero(dim, dim);
  for (uint32_t s = 0; s < dim; ++s) m(s ^ bmask, s) = 1.0;
  return m;
}

}  // namespace cg

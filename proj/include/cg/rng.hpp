// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cg/linalg.hpp"

namespace cg {

// Seeded generator with hand-rolled distributions so that identical seeds
// give identical streams on every platform (std distributions are
// implementation-defined).
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1).
  double uniform() {
    return (gen_() >> 11) * 0x1.0p-53;
  }

  uint64_t bits(int n) {
    return n == 0 ? 0 : (gen_() >> (64 - n));
  }

  // Index in [0, n).
  uint64_t index(uint64_t n) {
    return static_cast<uint64_t>(uniform() * static_cast<double>(n)) % n;
  }

  // Sample proportional to nonnegative weights.
  size_t discrete(const std::vector<double>& weights);

  // Standard normal via Box-Muller.
  double normal();

  std::mt19937_64& raw() { return gen_; }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Haar-distributed unitary via QR of a complex Ginibre matrix.
Mat random_unitary(int dim, Rng& rng);

// Hermitian involution with random eigenbasis and random +-1 spectrum.
Mat random_binary_observable(int dim, Rng& rng);

Vec random_state_vector(int dim, Rng& rng);

// Random full-rank density matrix.
Mat random_density(int dim, Rng& rng);

}  // namespace cg

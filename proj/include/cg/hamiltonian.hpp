// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "cg/pauli.hpp"
#include "cg/rng.hpp"

namespace cg {

struct degenerate_distribution_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// H = sum_{Wij} p_Wij W(e_i + e_j) with sum p = 1; spectrum lies in [-1, 1].
struct XXZZHamiltonian {
  struct Term {
    char w = 'Z';  // 'X' or 'Z'
    int i = 0, j = 0;
    double p = 0;
  };
  int n = 0;
  std::vector<Term> terms;

  void validate() const;
  Mat matrix() const;
  double ground_energy() const;
  Vec ground_state() const;
  double sum_p(char w) const;
};

XXZZHamiltonian random_xxzz(int n, int x_terms, int z_terms, Rng& rng);

std::string hamiltonian_to_json(const XXZZHamiltonian& h);
XXZZHamiltonian hamiltonian_from_json(const std::string& text);

// Question distributions of the verification protocol. D_X and D_Z are the
// renormalized term distributions; D_Q = U_n (x) D_X, and D_Q^parity are its
// exact renormalized restrictions to a.b = 0 / 1. Empty marginals (an H with
// no X or no Z terms) are flagged rather than fatal here.
struct QuestionDistributions {
  int n = 0;
  std::vector<std::pair<PauliMask, double>> d_x, d_z;
  struct Pair {
    PauliMask a, b;
    double p;
  };
  std::vector<Pair> d_q0, d_q1;

  bool x_empty() const { return d_x.empty(); }
  bool z_empty() const { return d_z.empty(); }
  // Throws degenerate_distribution_error when the requested table is empty.
  const std::vector<Pair>& conditioned(int parity) const;
};

QuestionDistributions build_distributions(const XXZZHamiltonian& h);

}  // namespace cg

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "cg/linalg.hpp"
#include "cg/pauli.hpp"

namespace cg {

// Pure state on num_qubits qubits. Post-measurement branches keep their
// Born weight instead of being renormalized; `subnormalized` records that.
struct StateVector {
  int num_qubits = 0;
  Vec amps;
  bool subnormalized = false;

  StateVector() = default;
  StateVector(int n, Vec a, bool sub = false);

  int dim() const { return 1 << num_qubits; }
  double norm_sq() const { return amps.squaredNorm(); }
  Mat density() const { return amps * amps.adjoint(); }

  // Throws unless the squared norm is 1 within tol (skipped when the
  // subnormalized flag is set).
  void check_normalized(double tol = kOpTol) const;

  static StateVector computational(int n, uint32_t basis_state);
};

// n EPR pairs on 2n qubits; pair i lives on qubits (i, n+i), so the first
// register is Alice's and the second Bob's.
StateVector epr_state(int n);

// ||A||^2_psi = tr[A^dagger A psi], clamped to 0 from tiny negatives.
double state_dependent_norm_sq(const Mat& a, const StateVector& psi);
double state_dependent_norm_sq(const Mat& a, const Mat& rho);

// Partial trace keeping the listed qubits (result ordered as listed,
// which must be increasing).
Mat partial_trace(const Mat& rho, int num_qubits, const std::vector<int>& keep);

// Reduced density of a (possibly subnormalized) pure vector without forming
// the full outer product.
Mat partial_trace_vec(const Vec& psi, int num_qubits, const std::vector<int>& keep);

// Purify rho on n qubits against a fresh n-qubit register appended after it.
StateVector purify(const Mat& rho, int n);

// Embed an operator acting on the listed qubits (first listed qubit = most
// significant index of op) into a total-qubit space, identity elsewhere.
Mat embed_op(const Mat& op, const std::vector<int>& qubits, int total);

// (sigma_Z^z sigma_X^x (x) I) |phi+> on two qubits; the Bell basis used for
// teleportation bookkeeping.
Vec bell_pair_state(int z, int x);

}  // namespace cg

// SPDX-License-Identifier: Apache-2.0
#include "cg/state.hpp"

#include <cmath>

namespace cg {

StateVector::StateVector(int n, Vec a, bool sub)
    : num_qubits(n), amps(std::move(a)), subnormalized(sub) {
  if (n < 0 || n > kMaxQubits)
    throw resource_error("StateVector: qubit count outside [0,12]");
  if (amps.size() != (1 << n))
    throw std::invalid_argument("StateVector: amplitude count != 2^n");
}

void StateVector::check_normalized(double tol) const {
  if (subnormalized) return;
  if (std::abs(norm_sq() - 1.0) > tol)
    throw std::invalid_argument("StateVector: not normalized");
}

StateVector StateVector::computational(int n, uint32_t basis_state) {
  Vec a = Vec::Zero(1 << n);
  a(basis_state) = 1.0;
  return StateVector(n, std::move(a));
}

StateVector epr_state(int n) {
  if (n < 1 || n > 6) throw resource_error("epr_state: n must be in [1,6]");
  const int total = 2 * n;
  Vec a = Vec::Zero(1 << total);
  const double w = std::pow(2.0, -0.5 * n);
  for (uint32_t s = 0; s < (1u << n); ++s) {
    uint32_t idx = 0;
    for (int i = 0; i < n; ++i) {
      if ((s >> i) & 1) idx |= amp_bit(total, i) | amp_bit(total, n + i);
    }
    a(idx) = w;
  }
  return StateVector(total, std::move(a));
}

double state_dependent_norm_sq(const Mat& a, const StateVector& psi) {
  if (a.cols() != psi.amps.size())
    throw std::invalid_argument("state_dependent_norm_sq: dimension mismatch");
  double v = (a * psi.amps).squaredNorm();
  return v < 0 ? 0.0 : v;
}

double state_dependent_norm_sq(const Mat& a, const Mat& rho) {
  if (a.cols() != rho.rows() || rho.rows() != rho.cols())
    throw std::invalid_argument("state_dependent_norm_sq: dimension mismatch");
  double v = ((a.adjoint() * a) * rho).trace().real();
  return v < 0 ? 0.0 : v;
}

Mat partial_trace(const Mat& rho, int num_qubits, const std::vector<int>& keep) {
  if (rho.rows() != rho.cols() || rho.rows() != (1 << num_qubits))
    throw std::invalid_argument("partial_trace: dimension mismatch");
  for (size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= num_qubits)
      throw std::invalid_argument("partial_trace: index out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw std::invalid_argument("partial_trace: keep list must be increasing");
  }
  const int k = static_cast<int>(keep.size());
  std::vector<int> traced;
  {
    std::vector<bool> kept(num_qubits, false);
    for (int q : keep) kept[q] = true;
    for (int q = 0; q < num_qubits; ++q)
      if (!kept[q]) traced.push_back(q);
  }
  const int t = num_qubits - k;
  const uint32_t dk = 1u << k, dt = 1u << t;

  // Scatter a compact index over the amplitude-bit positions of its qubits.
  auto scatter = [&](uint32_t compact, const std::vector<int>& qubits) {
    uint32_t out = 0;
    for (size_t p = 0; p < qubits.size(); ++p) {
      if ((compact >> (qubits.size() - 1 - p)) & 1)
        out |= amp_bit(num_qubits, qubits[p]);
    }
    return out;
  };
  std::vector<uint32_t> keep_idx(dk), tr_idx(dt);
  for (uint32_t r = 0; r < dk; ++r) keep_idx[r] = scatter(r, keep);
  for (uint32_t s = 0; s < dt; ++s) tr_idx[s] = scatter(s, traced);

  Mat out = Mat::Zero(dk, dk);
  for (uint32_t r = 0; r < dk; ++r)
    for (uint32_t c = 0; c < dk; ++c) {
      cplx sum = 0;
      for (uint32_t s = 0; s < dt; ++s)
        sum += rho(keep_idx[r] | tr_idx[s], keep_idx[c] | tr_idx[s]);
      out(r, c) = sum;
    }
  return out;
}

Mat embed_op(const Mat& op, const std::vector<int>& qubits, int total) {
  const int k = static_cast<int>(qubits.size());
  if (op.rows() != (1 << k) || op.cols() != (1 << k))
    throw std::invalid_argument("embed_op: operator/qubit-count mismatch");
  for (int q : qubits)
    if (q < 0 || q >= total) throw std::invalid_argument("embed_op: bad qubit index");
  std::vector<int> rest;
  {
    std::vector<bool> used(total, false);
    for (int q : qubits) {
      if (used[q]) throw std::invalid_argument("embed_op: repeated qubit");
      used[q] = true;
    }
    for (int q = 0; q < total; ++q)
      if (!used[q]) rest.push_back(q);
  }
  auto scatter = [&](uint32_t compact, const std::vector<int>& qs) {
    uint32_t out = 0;
    for (size_t p = 0; p < qs.size(); ++p)
      if ((compact >> (qs.size() - 1 - p)) & 1) out |= amp_bit(total, qs[p]);
    return out;
  };
  const uint32_t dop = 1u << k, drest = 1u << rest.size();
  Mat out = Mat::Zero(1 << total, 1 << total);
  for (uint32_t r = 0; r < drest; ++r) {
    uint32_t base = scatter(r, rest);
    for (uint32_t s = 0; s < dop; ++s) {
      uint32_t row = base | scatter(s, qubits);
      for (uint32_t t = 0; t < dop; ++t) {
        if (op(s, t) == cplx(0, 0)) continue;
        out(row, base | scatter(t, qubits)) = op(s, t);
      }
    }
  }
  return out;
}

Vec bell_pair_state(int z, int x) {
  Vec v = Vec::Zero(4);
  const double w = 1 / std::sqrt(2.0);
  // (sigma_Z^z sigma_X^x (x) I)(|00> + |11>)/sqrt2
  if (x == 0) {
    v(0) = w;
    v(3) = z ? -w : w;
  } else {
    v(2) = z ? -w : w;  // sigma_Z hits the first qubit, set to 1 here
    v(1) = w;
  }
  return v;
}

Mat partial_trace_vec(const Vec& psi, int num_qubits, const std::vector<int>& keep) {
  if (psi.size() != (1 << num_qubits))
    throw std::invalid_argument("partial_trace_vec: dimension mismatch");
  for (size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= num_qubits)
      throw std::invalid_argument("partial_trace_vec: index out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw std::invalid_argument("partial_trace_vec: keep list must be increasing");
  }
  std::vector<int> traced;
  {
    std::vector<bool> kept(num_qubits, false);
    for (int q : keep) kept[q] = true;
    for (int q = 0; q < num_qubits; ++q)
      if (!kept[q]) traced.push_back(q);
  }
  auto scatter = [&](uint32_t compact, const std::vector<int>& qubits) {
    uint32_t out = 0;
    for (size_t p = 0; p < qubits.size(); ++p)
      if ((compact >> (qubits.size() - 1 - p)) & 1)
        out |= amp_bit(num_qubits, qubits[p]);
    return out;
  };
  const uint32_t dk = 1u << keep.size(), dt = 1u << traced.size();
  std::vector<uint32_t> keep_idx(dk), tr_idx(dt);
  for (uint32_t r = 0; r < dk; ++r) keep_idx[r] = scatter(r, keep);
  for (uint32_t s = 0; s < dt; ++s) tr_idx[s] = scatter(s, traced);
  Mat out = Mat::Zero(dk, dk);
  for (uint32_t s = 0; s < dt; ++s)
    for (uint32_t r = 0; r < dk; ++r) {
      cplx vr = psi(keep_idx[r] | tr_idx[s]);
      if (vr == cplx(0, 0)) continue;
      for (uint32_t c = 0; c < dk; ++c)
        out(r, c) += vr * std::conj(psi(keep_idx[c] | tr_idx[s]));
    }
  return out;
}

StateVector purify(const Mat& rho, int n) {
  if (rho.rows() != (1 << n))
    throw std::invalid_argument("purify: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  Vec a = Vec::Zero(1 << (2 * n));
  for (int i = 0; i < rho.rows(); ++i) {
    double lam = es.eigenvalues()(i);
    if (lam < 1e-15) continue;
    double w = std::sqrt(lam);
    for (int j = 0; j < rho.rows(); ++j)
      a(static_cast<uint32_t>(j) << n | static_cast<uint32_t>(i)) +=
          w * es.eigenvectors()(j, i);
  }
  return StateVector(2 * n, std::move(a));
}

}  // namespace cg

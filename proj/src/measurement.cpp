// SPDX-License-Identifier: Apache-2.0
#include "cg/measurement.hpp"

namespace cg {

void ProjectiveMeasurement::validate(double tol) const {
  if (outcomes.size() != projectors.size() || projectors.empty())
    throw std::invalid_argument("PVM: outcome/projector count mismatch");
  const auto dim = projectors[0].rows();
  Mat sum = Mat::Zero(dim, dim);
  for (const Mat& p : projectors) {
    if (p.rows() != dim || p.cols() != dim)
      throw std::invalid_argument("PVM: inconsistent projector dimensions");
    if (!is_projector(p, tol))
      throw std::invalid_argument("PVM: element is not a projector");
    sum += p;
  }
  for (size_t i = 0; i < projectors.size(); ++i)
    for (size_t j = i + 1; j < projectors.size(); ++j)
      if (max_abs(projectors[i] * projectors[j]) > tol)
        throw std::invalid_argument("PVM: projectors not orthogonal");
  if (!is_identity(sum, tol))
    throw std::invalid_argument("PVM: projectors do not sum to identity");
}

ProjectiveMeasurement ProjectiveMeasurement::computational_basis(int n) {
  ProjectiveMeasurement m;
  const uint32_t dim = 1u << n;
  for (uint32_t s = 0; s < dim; ++s) {
    Mat p = Mat::Zero(dim, dim);
    p(s, s) = 1.0;
    // Outcome reported in qubit-i-is-bit-i order.
    uint64_t out = 0;
    for (int q = 0; q < n; ++q)
      if (s & amp_bit(n, q)) out |= 1ull << q;
    m.outcomes.push_back(out);
    m.projectors.push_back(std::move(p));
  }
  return m;
}

std::vector<MeasureBranch> measure(const ProjectiveMeasurement& m,
                                   const StateVector& psi) {
  m.validate();
  if (m.projectors[0].rows() != psi.amps.size())
    throw std::invalid_argument("measure: dimension mismatch");
  std::vector<MeasureBranch> out;
  out.reserve(m.outcomes.size());
  double total = 0.0;
  for (size_t i = 0; i < m.outcomes.size(); ++i) {
    Vec post = m.projectors[i] * psi.amps;
    double p = post.squaredNorm();
    total += p;
    out.push_back({m.outcomes[i], p, StateVector(psi.num_qubits, std::move(post), true)});
  }
  if (std::abs(total - psi.norm_sq()) > 1e-10)
    throw std::invalid_argument("measure: probabilities do not sum to the state weight");
  return out;
}

MeasureBranch sample_measure(const ProjectiveMeasurement& m,
                             const StateVector& psi, Rng& rng) {
  auto branches = measure(m, psi);
  std::vector<double> w;
  w.reserve(branches.size());
  for (const auto& b : branches) w.push_back(b.probability);
  auto& chosen = branches[rng.discrete(w)];
  // Renormalize: the sampled branch is the prover's live state.
  chosen.post.amps /= std::sqrt(chosen.probability);
  chosen.post.subnormalized = false;
  return chosen;
}

BinaryObservable BinaryObservable::from_matrix(const Mat& m, double tol) {
  if (!is_hermitian(m, tol))
    throw std::invalid_argument("BinaryObservable: not Hermitian");
  if (!is_identity(m * m, tol))
    throw std::invalid_argument("BinaryObservable: does not square to identity");
  Mat id = Mat::Identity(m.rows(), m.cols());
  return BinaryObservable{m, 0.5 * (id + m), 0.5 * (id - m)};
}

ProjectiveMeasurement BinaryObservable::to_pvm() const {
  return ProjectiveMeasurement{{0, 1}, {proj_plus, proj_minus}};
}

}  // namespace cg

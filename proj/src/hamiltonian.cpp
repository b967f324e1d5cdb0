// SPDX-License-Identifier: Apache-2.0
#include "cg/hamiltonian.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

namespace cg {

void XXZZHamiltonian::validate() const {
  if (n < 2 || n > kMaxQubits)
    throw std::invalid_argument("XXZZHamiltonian: n out of range");
  double total = 0;
  for (const auto& t : terms) {
    if (t.w != 'X' && t.w != 'Z')
      throw std::invalid_argument("XXZZHamiltonian: term type must be X or Z");
    if (t.i == t.j || t.i < 0 || t.j < 0 || t.i >= n || t.j >= n)
      throw std::invalid_argument("XXZZHamiltonian: bad term indices");
    if (t.p < 0) throw std::invalid_argument("XXZZHamiltonian: negative weight");
    total += t.p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("XXZZHamiltonian: weights do not sum to 1");
}

Mat XXZZHamiltonian::matrix() const {
  validate();
  Mat h = Mat::Zero(1 << n, 1 << n);
  for (const auto& t : terms) {
    PauliMask m = PauliMask::two_local(n, t.i, t.j);
    h += t.p * (t.w == 'Z' ? pauli_z(m) : pauli_x(m));
  }
  return h;
}

double XXZZHamiltonian::ground_energy() const {
  return min_eigenvalue(matrix());
}

Vec XXZZHamiltonian::ground_state() const {
  Eigen::SelfAdjointEigenSolver<Mat> es(matrix());
  return es.eigenvectors().col(0);
}

double XXZZHamiltonian::sum_p(char w) const {
  double s = 0;
  for (const auto& t : terms)
    if (t.w == w) s += t.p;
  return s;
}

XXZZHamiltonian random_xxzz(int n, int x_terms, int z_terms, Rng& rng) {
  XXZZHamiltonian h;
  h.n = n;
  std::set<std::tuple<char, int, int>> seen;
  auto add = [&](char w) {
    for (int attempt = 0; attempt < 100; ++attempt) {
      int i = static_cast<int>(rng.index(n));
      int j = static_cast<int>(rng.index(n));
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      if (!seen.insert({w, i, j}).second) continue;
      h.terms.push_back({w, i, j, rng.uniform() + 0.1});
      return;
    }
    throw std::invalid_argument("random_xxzz: could not place distinct terms");
  };
  for (int k = 0; k < x_terms; ++k) add('X');
  for (int k = 0; k < z_terms; ++k) add('Z');
  double total = 0;
  for (const auto& t : h.terms) total += t.p;
  for (auto& t : h.terms) t.p /= total;
  h.validate();
  return h;
}

std::string hamiltonian_to_json(const XXZZHamiltonian& h) {
  nlohmann::json j;
  j["n"] = h.n;
  j["terms"] = nlohmann::json::array();
  for (const auto& t : h.terms)
    j["terms"].push_back(
        {{"w", std::string(1, t.w)}, {"i", t.i}, {"j", t.j}, {"p", t.p}});
  return j.dump(2);
}

XXZZHamiltonian hamiltonian_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  XXZZHamiltonian h;
  h.n = j.at("n");
  for (const auto& t : j.at("terms")) {
    std::string w = t.at("w");
    if (w.size() != 1)
      throw std::invalid_argument("hamiltonian_from_json: bad term type");
    h.terms.push_back({w[0], t.at("i"), t.at("j"), t.at("p")});
  }
  h.validate();
  return h;
}

const std::vector<QuestionDistributions::Pair>& QuestionDistributions::conditioned(
    int parity) const {
  const auto& table = parity ? d_q1 : d_q0;
  if (table.empty())
    throw degenerate_distribution_error(
        "question distribution: conditioned table is empty");
  return table;
}

QuestionDistributions build_distributions(const XXZZHamiltonian& h) {
  h.validate();
  QuestionDistributions d;
  d.n = h.n;
  double px = h.sum_p('X'), pz = h.sum_p('Z');
  for (const auto& t : h.terms) {
    PauliMask m = PauliMask::two_local(h.n, t.i, t.j);
    auto& table = (t.w == 'X') ? d.d_x : d.d_z;
    double denom = (t.w == 'X') ? px : pz;
    bool merged = false;
    for (auto& [mask, p] : table)
      if (mask == m) {
        p += t.p / denom;
        merged = true;
        break;
      }
    if (!merged) table.push_back({m, t.p / denom});
  }

  // D_Q = U_n (x) D_X, split exactly by the parity a.b.
  double w0 = 0, w1 = 0;
  for (uint32_t bits = 0; bits < (1u << h.n); ++bits) {
    PauliMask a(h.n, bits);
    for (const auto& [b, pb] : d.d_x) {
      double w = pb / static_cast<double>(1u << h.n);
      if (a.dot(b)) {
        d.d_q1.push_back({a, b, w});
        w1 += w;
      } else {
        d.d_q0.push_back({a, b, w});
        w0 += w;
      }
    }
  }
  if (!d.d_x.empty() && (d.d_q0.empty() || d.d_q1.empty()))
    throw degenerate_distribution_error(
        "build_distributions: all question mass lies on one parity");
  for (auto& q : d.d_q0) q.p /= w0;
  for (auto& q : d.d_q1) q.p /= w1;
  return d;
}

}  // namespace cg

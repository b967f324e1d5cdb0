// SPDX-License-Identifier: Apache-2.0
#include "cg/games.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace cg {

namespace {

using Predicate = std::function<bool(uint64_t, uint64_t, uint64_t, uint64_t)>;

const std::map<std::string, Predicate>& predicate_registry() {
  static const std::map<std::string, Predicate> reg = {
      {"chsh",
       [](uint64_t x, uint64_t y, uint64_t a, uint64_t b) {
         return ((x & y) & 1) == ((a ^ b) & 1);
       }},
      {"commutation",
       [](uint64_t, uint64_t y, uint64_t a, uint64_t b) {
         return (b & 1) == ((a >> y) & 1);
       }},
      {"always_accept", [](uint64_t, uint64_t, uint64_t, uint64_t) { return true; }},
      {"always_reject", [](uint64_t, uint64_t, uint64_t, uint64_t) { return false; }},
  };
  return reg;
}

std::vector<uint64_t> distinct_questions(
    const NonlocalGame& g, bool alice) {
  std::vector<uint64_t> qs;
  for (const auto& [q, p] : g.questions) {
    (void)p;
    uint64_t v = alice ? q.first : q.second;
    if (std::find(qs.begin(), qs.end(), v) == qs.end()) qs.push_back(v);
  }
  std::sort(qs.begin(), qs.end());
  return qs;
}

}  // namespace

void NonlocalGame::validate() const {
  double total = 0;
  for (const auto& [q, p] : questions) {
    (void)q;
    if (p < 0) throw std::invalid_argument("NonlocalGame: negative weight");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("NonlocalGame: weights do not sum to 1");
  if (!predicate) throw std::invalid_argument("NonlocalGame: missing predicate");
}

void QuantumStrategy::validate() const {
  if (state.dim() != dim_a() * dim_b())
    throw std::invalid_argument("QuantumStrategy: state dimension mismatch");
  state.check_normalized();
  for (const auto& [x, m] : alice_pvms) {
    (void)x;
    m.validate();
    if (m.projectors[0].rows() != dim_a())
      throw std::invalid_argument("QuantumStrategy: Alice PVM dimension");
  }
  for (const auto& [y, m] : bob_pvms) {
    (void)y;
    m.validate();
    if (m.projectors[0].rows() != dim_b())
      throw std::invalid_argument("QuantumStrategy: Bob PVM dimension");
  }
}

double quantum_value(const NonlocalGame& g, const QuantumStrategy& s) {
  g.validate();
  s.validate();
  double value = 0;
  for (const auto& [q, weight] : g.questions) {
    const auto& [x, y] = q;
    const auto& ma = s.alice_pvms.at(x);
    const auto& mb = s.bob_pvms.at(y);
    for (size_t i = 0; i < ma.outcomes.size(); ++i)
      for (size_t j = 0; j < mb.outcomes.size(); ++j) {
        if (!g.predicate(x, y, ma.outcomes[i], mb.outcomes[j])) continue;
        Mat op = kron(ma.projectors[i], mb.projectors[j]);
        value += weight * (s.state.amps.adjoint() * op * s.state.amps)(0).real();
      }
  }
  return value;
}

double classical_value_bruteforce(const NonlocalGame& g) {
  g.validate();
  auto aq = distinct_questions(g, true);
  auto bq = distinct_questions(g, false);
  double log2_total = static_cast<double>(g.m1) * aq.size() +
                      static_cast<double>(g.m2) * bq.size();
  if (log2_total > 24)
    throw resource_error("classical_value_bruteforce: enumeration too large");
  const uint64_t na = 1ull << (g.m1 * aq.size());
  const uint64_t nb = 1ull << (g.m2 * bq.size());
  const uint64_t am = (1ull << g.m1) - 1, bm = (1ull << g.m2) - 1;
  auto qpos = [](const std::vector<uint64_t>& v, uint64_t q) {
    return std::find(v.begin(), v.end(), q) - v.begin();
  };
  double best = 0;
  for (uint64_t ia = 0; ia < na; ++ia)
    for (uint64_t ib = 0; ib < nb; ++ib) {
      double value = 0;
      for (const auto& [q, weight] : g.questions) {
        uint64_t a = (ia >> (g.m1 * qpos(aq, q.first))) & am;
        uint64_t b = (ib >> (g.m2 * qpos(bq, q.second))) & bm;
        if (g.predicate(q.first, q.second, a, b)) value += weight;
      }
      best = std::max(best, value);
    }
  return best;
}

NonlocalGame chsh_game() {
  NonlocalGame g;
  g.n1 = g.n2 = g.m1 = g.m2 = 1;
  for (uint64_t x = 0; x < 2; ++x)
    for (uint64_t y = 0; y < 2; ++y) g.questions.push_back({{x, y}, 0.25});
  g.predicate_id = "chsh";
  g.predicate = predicate_registry().at("chsh");
  return g;
}

NonlocalGame commutation_game() {
  NonlocalGame g;
  // Empty Alice question, encoded as the single dummy label 0.
  g.n1 = 0;
  g.n2 = 1;
  g.m1 = 2;
  g.m2 = 1;
  g.questions = {{{0, 0}, 0.5}, {{0, 1}, 0.5}};
  g.predicate_id = "commutation";
  g.predicate = predicate_registry().at("commutation");
  return g;
}

NonlocalGame always_accept_game() {
  NonlocalGame g = chsh_game();
  g.predicate_id = "always_accept";
  g.predicate = predicate_registry().at("always_accept");
  return g;
}

NonlocalGame always_reject_game() {
  NonlocalGame g = chsh_game();
  g.predicate_id = "always_reject";
  g.predicate = predicate_registry().at("always_reject");
  return g;
}

QuantumStrategy rotated_chsh_strategy(double phi) {
  Mat z(2, 2), x(2, 2);
  z << 1, 0, 0, -1;
  x << 0, 1, 1, 0;
  QuantumStrategy s;
  s.alice_qubits = 1;
  s.bob_qubits = 1;
  s.state = epr_state(1);
  s.alice_pvms[0] = BinaryObservable::from_matrix(z).to_pvm();
  s.alice_pvms[1] = BinaryObservable::from_matrix(x).to_pvm();
  s.bob_pvms[0] =
      BinaryObservable::from_matrix(std::cos(phi) * z + std::sin(phi) * x).to_pvm();
  s.bob_pvms[1] =
      BinaryObservable::from_matrix(std::cos(phi) * z - std::sin(phi) * x).to_pvm();
  return s;
}

QuantumStrategy canonical_chsh_strategy() { return rotated_chsh_strategy(M_PI / 4); }

QuantumStrategy constant_chsh_strategy(int a, int b) {
  QuantumStrategy s;
  s.alice_qubits = 0;
  s.bob_qubits = 0;
  s.state = StateVector(0, Vec::Ones(1));
  ProjectiveMeasurement ma{{static_cast<uint64_t>(a)}, {Mat::Identity(1, 1)}};
  ProjectiveMeasurement mb{{static_cast<uint64_t>(b)}, {Mat::Identity(1, 1)}};
  s.alice_pvms[0] = ma;
  s.alice_pvms[1] = ma;
  s.bob_pvms[0] = mb;
  s.bob_pvms[1] = mb;
  return s;
}

QuantumStrategy honest_commutation_strategy() {
  Mat z(2, 2);
  z << 1, 0, 0, -1;
  QuantumStrategy s;
  s.alice_qubits = 0;
  s.bob_qubits = 1;
  s.state = StateVector::computational(1, 0);
  // Both sigma_Z outcomes on |0> are 0, reported as the 2-bit answer (0,0).
  s.alice_pvms[0] = ProjectiveMeasurement{{0}, {Mat::Identity(1, 1)}};
  s.bob_pvms[0] = BinaryObservable::from_matrix(z).to_pvm();
  s.bob_pvms[1] = BinaryObservable::from_matrix(z).to_pvm();
  return s;
}

double xor_game_polynomial_value(
    const std::map<std::pair<uint64_t, uint64_t>, double>& correlators,
    const std::map<std::pair<uint64_t, uint64_t>, int>& signs) {
  if (correlators.empty())
    throw std::invalid_argument("xor_game_polynomial_value: no correlators");
  double sum = 0;
  for (const auto& [q, c] : correlators) {
    if (c < -1.0 - 1e-12 || c > 1.0 + 1e-12)
      throw std::invalid_argument("xor_game_polynomial_value: correlator outside [-1,1]");
    sum += static_cast<double>(signs.at(q)) * c;
  }
  return 0.5 + sum / (2.0 * static_cast<double>(correlators.size()));
}

std::string game_to_json(const NonlocalGame& g) {
  nlohmann::json j;
  j["n1"] = g.n1;
  j["n2"] = g.n2;
  j["m1"] = g.m1;
  j["m2"] = g.m2;
  j["predicate"] = g.predicate_id;
  j["questions"] = nlohmann::json::array();
  for (const auto& [q, p] : g.questions)
    j["questions"].push_back({{"x", q.first}, {"y", q.second}, {"p", p}});
  return j.dump(2);
}

NonlocalGame game_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  NonlocalGame g;
  g.n1 = j.at("n1");
  g.n2 = j.at("n2");
  g.m1 = j.at("m1");
  g.m2 = j.at("m2");
  g.predicate_id = j.at("predicate");
  auto it = predicate_registry().find(g.predicate_id);
  if (it == predicate_registry().end())
    throw std::invalid_argument("game_from_json: unknown predicate id");
  g.predicate = it->second;
  for (const auto& q : j.at("questions"))
    g.questions.push_back({{q.at("x"), q.at("y")}, q.at("p")});
  g.validate();
  return g;
}

double chsh_quantum_value() { return 0.5 + std::sqrt(2.0) / 4.0; }

}  // namespace cg

// SPDX-License-Identifier: Apache-2.0
#include "cg/compiler.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace cg {

void KrausFamily::validate(double tol) const {
  if (ops.empty()) throw std::invalid_argument("KrausFamily: empty");
  const auto dim = ops[0].m.rows();
  Mat sum = Mat::Zero(dim, dim);
  for (const auto& op : ops) {
    if (op.m.rows() != dim || op.m.cols() != dim)
      throw std::invalid_argument("KrausFamily: inconsistent dimensions");
    Mat pos = op.m.adjoint() * op.m;
    if (!is_projector(pos, tol))
      throw std::invalid_argument("KrausFamily: A^dagger A is not a projector");
    sum += pos;
  }
  if (!is_identity(sum, tol))
    throw std::invalid_argument("KrausFamily: completeness fails");
}

CompiledProtocol compile(const NonlocalGame& g,
                         std::shared_ptr<IdealQheScheme> scheme, int lambda) {
  g.validate();
  if (!scheme) throw std::invalid_argument("compile: missing scheme");
  return CompiledProtocol{g, std::move(scheme), lambda};
}

void CompiledProverStrategy::validate(double tol) const {
  state.check_normalized(tol);
  for (const auto& [cls, fam] : first_round) {
    (void)cls;
    fam.validate(tol);
    if (fam.ops[0].m.rows() != state.dim())
      throw std::invalid_argument("prover: first-round dimension mismatch");
  }
  for (const auto& [y, pvm] : second_round) {
    (void)y;
    pvm.validate(tol);
    if (pvm.projectors[0].rows() != state.dim())
      throw std::invalid_argument("prover: second-round dimension mismatch");
  }
}

CompiledProverStrategy honest_compiled_prover(const QuantumStrategy& s,
                                              const CompiledProtocol& p) {
  s.validate();
  const int total = s.alice_qubits + s.bob_qubits;
  if (total > kMaxQubits)
    throw resource_error("honest_compiled_prover: more than 12 qubits");
  std::vector<int> aq, bq;
  for (int q = 0; q < s.alice_qubits; ++q) aq.push_back(q);
  for (int q = 0; q < s.bob_qubits; ++q) bq.push_back(s.alice_qubits + q);

  CompiledProverStrategy prover;
  prover.id = "honest";
  prover.num_qubits = total;
  prover.state = s.state;
  for (const auto& [x, pvm] : s.alice_pvms) {
    KrausFamily fam;
    fam.answer_bits = p.game.m1;
    for (size_t i = 0; i < pvm.outcomes.size(); ++i)
      fam.ops.push_back(
          {pvm.outcomes[i], embed_op(pvm.projectors[i], aq, total)});
    prover.first_round[x] = std::move(fam);
  }
  for (const auto& [y, pvm] : s.bob_pvms) {
    ProjectiveMeasurement full;
    full.outcomes = pvm.outcomes;
    for (const Mat& proj : pvm.projectors)
      full.projectors.push_back(embed_op(proj, bq, total));
    prover.second_round[y] = std::move(full);
  }
  return prover;
}

double compiled_value_exact(const CompiledProtocol& p,
                            const CompiledProverStrategy& prover) {
  if (prover.nonce_dependent)
    throw unsupported_strategy_error(
        "compiled_value_exact: nonce-dependent strategies are not enumerable");
  prover.validate();
  double value = 0;
  for (const auto& [q, weight] : p.game.questions) {
    const auto& [x, y] = q;
    const auto& fam = prover.family(x);
    const auto& pvm = prover.second_round.at(y);
    for (const auto& op : fam.ops) {
      Vec branch = op.m * prover.state.amps;
      for (size_t j = 0; j < pvm.outcomes.size(); ++j) {
        if (!p.game.predicate(x, y, op.answer, pvm.outcomes[j])) continue;
        value += weight * (pvm.projectors[j] * branch).squaredNorm();
      }
    }
  }
  return value;
}

Transcript run_round(const CompiledProtocol& p,
                     const CompiledProverStrategy& prover, Rng& rng) {
  Transcript t;
  // Verifier: sample (x,y), fresh key, encrypt x.
  std::vector<double> w;
  for (const auto& [q, weight] : p.game.questions) {
    (void)q;
    w.push_back(weight);
  }
  const auto& [xy, weight] = p.game.questions[rng.discrete(w)];
  (void)weight;
  t.x = xy.first;
  t.y = xy.second;
  SecretKey sk = p.scheme->gen(p.lambda);
  t.c = p.scheme->enc(sk, t.x, std::max(p.game.n1, 1));

  // Prover, first round: the ideal scheme's ciphertext classes are
  // plaintexts, so the prover's declared family for the class applies.
  const auto& fam = prover.family(p.scheme->plaintext_class(t.c));
  std::vector<double> bw;
  std::vector<Vec> branches;
  for (const auto& op : fam.ops) {
    Vec v = op.m * prover.state.amps;
    bw.push_back(v.squaredNorm());
    branches.push_back(std::move(v));
  }
  size_t ai = rng.discrete(bw);
  t.alpha = p.scheme->enc(sk, fam.ops[ai].answer, fam.answer_bits);
  StateVector post(prover.state.num_qubits,
                   branches[ai] / std::sqrt(bw[ai]));

  // Second round in the clear.
  auto sampled = sample_measure(prover.second_round.at(t.y), post, rng);
  t.b = sampled.outcome;
  t.a = p.scheme->dec(sk, t.alpha);
  t.accept = p.game.predicate(t.x, t.y, t.a, t.b);
  return t;
}

namespace {
std::string nonce_hex(const std::vector<uint8_t>& nonce) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (uint8_t b : nonce) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 15]);
  }
  return s;
}
}  // namespace

std::string transcript_to_json_line(const Transcript& t) {
  nlohmann::json j;
  j["x"] = t.x;
  j["y"] = t.y;
  j["c"] = {{"key", t.c.key_id}, {"handle", t.c.handle}, {"nonce", nonce_hex(t.c.nonce)}};
  j["alpha"] = {{"key", t.alpha.key_id},
                {"handle", t.alpha.handle},
                {"nonce", nonce_hex(t.alpha.nonce)}};
  j["a"] = t.a;
  j["b"] = t.b;
  j["accept"] = t.accept;
  return j.dump();
}

BinaryObservable decrypted_observable(const CompiledProverStrategy& prover,
                                      uint64_t cls) {
  const auto& fam = prover.family(cls);
  Mat obs = Mat::Zero(prover.state.dim(), prover.state.dim());
  for (const auto& op : fam.ops) {
    if (op.answer > 1)
      throw std::invalid_argument("decrypted_observable: non-binary answer");
    obs += (op.answer ? -1.0 : 1.0) * (op.m.adjoint() * op.m);
  }
  return BinaryObservable::from_matrix(obs);
}

std::vector<std::pair<uint64_t, StateVector>> post_measurement_states(
    const CompiledProverStrategy& prover, uint64_t cls) {
  std::vector<std::pair<uint64_t, StateVector>> out;
  for (const auto& op : prover.family(cls).ops)
    out.push_back({op.answer, StateVector(prover.state.num_qubits,
                                          op.m * prover.state.amps, true)});
  return out;
}

}  // namespace cg

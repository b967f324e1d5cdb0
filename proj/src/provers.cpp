// SPDX-License-Identifier: Apache-2.0
#include "cg/provers.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cg {

namespace {

CompiledProtocol chsh_protocol_shape() {
  return compile(chsh_game(), std::make_shared<IdealQheScheme>(), 128);
}

}  // namespace

CompiledProverStrategy honest_chsh_compiled() {
  auto p = honest_compiled_prover(canonical_chsh_strategy(), chsh_protocol_shape());
  p.id = "honest";
  return p;
}

CompiledProverStrategy rotated_chsh_compiled(double phi) {
  auto p = honest_compiled_prover(rotated_chsh_strategy(phi), chsh_protocol_shape());
  p.id = "rotated:" + std::to_string(phi);
  return p;
}

CompiledProverStrategy constant_answer_chsh(int a, int b) {
  CompiledProverStrategy p;
  p.id = "constant:" + std::to_string(a) + std::to_string(b);
  p.num_qubits = 0;
  p.state = StateVector(0, Vec::Ones(1));
  KrausFamily fam;
  fam.answer_bits = 1;
  fam.ops = {{static_cast<uint64_t>(a), Mat::Identity(1, 1)}};
  p.first_round[0] = fam;
  p.first_round[1] = fam;
  ProjectiveMeasurement pvm{{static_cast<uint64_t>(b)}, {Mat::Identity(1, 1)}};
  p.second_round[0] = pvm;
  p.second_round[1] = pvm;
  return p;
}

CompiledProverStrategy random_answer_chsh() {
  CompiledProverStrategy p;
  p.id = "random";
  p.num_qubits = 2;
  Vec plus = Vec::Ones(2) / std::sqrt(2.0);
  p.state = StateVector(2, kron(plus, plus));
  Mat p0(2, 2), p1(2, 2);
  p0 << 1, 0, 0, 0;
  p1 << 0, 0, 0, 1;
  KrausFamily fam;
  fam.answer_bits = 1;
  fam.ops = {{0, embed_op(p0, {0}, 2)}, {1, embed_op(p1, {0}, 2)}};
  p.first_round[0] = fam;
  p.first_round[1] = fam;
  ProjectiveMeasurement pvm{{0, 1}, {embed_op(p0, {1}, 2), embed_op(p1, {1}, 2)}};
  p.second_round[0] = pvm;
  p.second_round[1] = pvm;
  return p;
}

CompiledProverStrategy plaintext_reading_cheat() {
  CompiledProverStrategy p;
  p.id = "cheat";
  p.num_qubits = 1;
  p.state = StateVector::computational(1, 0);
  Mat x(2, 2), p0(2, 2), p1(2, 2);
  x << 0, 1, 1, 0;
  p0 << 1, 0, 0, 0;
  p1 << 0, 0, 0, 1;
  // First round: write the plaintext into the note qubit, answer 0.
  p.first_round[0] = KrausFamily{{{0, Mat::Identity(2, 2)}}, 1};
  p.first_round[1] = KrausFamily{{{0, x}}, 1};
  // Second round: y=0 answers 0; y=1 reads the note, so b = x*y.
  p.second_round[0] = ProjectiveMeasurement{{0}, {Mat::Identity(2, 2)}};
  p.second_round[1] = ProjectiveMeasurement{{0, 1}, {p0, p1}};
  return p;
}

CompiledProverStrategy mixture(const std::vector<CompiledProverStrategy>& provers,
                               const std::vector<double>& weights) {
  if (provers.size() < 2 || provers.size() != weights.size())
    throw std::invalid_argument("mixture: need matching provers and weights");
  double total = 0;
  for (double w : weights) {
    if (w < 0) throw std::invalid_argument("mixture: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("mixture: weights must sum to 1");

  const size_t k = provers.size();
  int coin_qubits = 0;
  while ((1u << coin_qubits) < k) ++coin_qubits;
  int body_qubits = 0;
  for (const auto& p : provers)
    body_qubits = std::max(body_qubits, p.num_qubits);
  const int total_qubits = coin_qubits + body_qubits;
  if (total_qubits > kMaxQubits) throw resource_error("mixture: too many qubits");
  const int body_dim = 1 << body_qubits;
  const size_t coin_dim = 1u << coin_qubits;

  // Pad a sub-prover operator to the common body by appending identity.
  auto pad = [&](const Mat& m) {
    if (m.rows() == body_dim) return m;
    return kron(m, Mat::Identity(body_dim / m.rows(), body_dim / m.rows()));
  };
  auto coin_proj = [&](size_t i) {
    Mat c = Mat::Zero(coin_dim, coin_dim);
    c(i, i) = 1.0;
    return c;
  };
  // Coin states beyond k defer to sub-prover 0 so every family stays complete.
  auto prover_for_coin = [&](size_t i) -> const CompiledProverStrategy& {
    return provers[i < k ? i : 0];
  };

  CompiledProverStrategy out;
  out.id = "mixture";
  out.num_qubits = total_qubits;
  Vec state = Vec::Zero(1 << total_qubits);
  for (size_t i = 0; i < k; ++i) {
    Vec body = provers[i].state.amps;
    if (body.size() < body_dim) {
      Vec padded = Vec::Zero(body_dim);
      // Appended pad qubits sit in |0...0>; the original amplitudes land on
      // indices whose pad bits are zero.
      int stride = body_dim / static_cast<int>(body.size());
      for (int j = 0; j < body.size(); ++j) padded(j * stride) = body(j);
      body = std::move(padded);
    }
    Vec coin = Vec::Zero(coin_dim);
    coin(i) = std::sqrt(weights[i]);
    state += kron(coin, body);
  }
  out.state = StateVector(total_qubits, std::move(state));

  for (const auto& [cls, fam0] : provers[0].first_round) {
    std::set<uint64_t> answers;
    for (const auto& p : provers)
      for (const auto& op : p.first_round.at(cls).ops) answers.insert(op.answer);
    KrausFamily fam;
    fam.answer_bits = fam0.answer_bits;
    for (uint64_t ans : answers) {
      Mat m = Mat::Zero(coin_dim * body_dim, coin_dim * body_dim);
      for (size_t i = 0; i < coin_dim; ++i) {
        const auto& sub = prover_for_coin(i).first_round.at(cls);
        for (const auto& op : sub.ops)
          if (op.answer == ans) m += kron(coin_proj(i), pad(op.m));
      }
      fam.ops.push_back({ans, std::move(m)});
    }
    out.first_round[cls] = std::move(fam);
  }

  for (const auto& [y, pvm0] : provers[0].second_round) {
    (void)pvm0;
    std::set<uint64_t> outcomes;
    for (const auto& p : provers)
      for (uint64_t b : p.second_round.at(y).outcomes) outcomes.insert(b);
    ProjectiveMeasurement pvm;
    for (uint64_t b : outcomes) {
      Mat m = Mat::Zero(coin_dim * body_dim, coin_dim * body_dim);
      for (size_t i = 0; i < coin_dim; ++i) {
        const auto& sub = prover_for_coin(i).second_round.at(y);
        for (size_t j = 0; j < sub.outcomes.size(); ++j)
          if (sub.outcomes[j] == b) m += kron(coin_proj(i), pad(sub.projectors[j]));
      }
      pvm.outcomes.push_back(b);
      pvm.projectors.push_back(std::move(m));
    }
    out.second_round[y] = std::move(pvm);
  }
  return out;
}

CompiledProverStrategy commutation_honest_compiled() {
  auto proto = compile(commutation_game(), std::make_shared<IdealQheScheme>(), 128);
  auto p = honest_compiled_prover(honest_commutation_strategy(), proto);
  p.id = "commutation-honest";
  return p;
}

CompiledProverStrategy commutation_zx_compiled() {
  Mat z(2, 2), x(2, 2);
  z << 1, 0, 0, -1;
  x << 0, 1, 1, 0;
  CompiledProverStrategy p;
  p.id = "commutation-zx";
  p.num_qubits = 1;
  p.state = StateVector::computational(1, 0);
  p.first_round[0] = KrausFamily{{{0, Mat::Identity(2, 2)}}, 2};
  p.second_round[0] = BinaryObservable::from_matrix(z).to_pvm();
  p.second_round[1] = BinaryObservable::from_matrix(x).to_pvm();
  return p;
}

}  // namespace cg

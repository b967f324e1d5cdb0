// SPDX-License-Identifier: Apache-2.0
#include "cg/qhe.hpp"

#include <cmath>

namespace cg {

IdealQheScheme::IdealQheScheme(uint64_t seed) : nonce_rng_(seed) {}

SecretKey IdealQheScheme::gen(int lambda) {
  if (lambda < 1) throw std::invalid_argument("gen: lambda must be positive");
  std::lock_guard<std::mutex> lock(mu_);
  uint64_t id = next_key_++;
  keys_[id] = KeyRecord{lambda, {}};
  return SecretKey{id, lambda};
}

Ciphertext IdealQheScheme::enc_locked(uint64_t key_id, int lambda,
                                      uint64_t plaintext, int nbits) {
  Ciphertext ct;
  ct.key_id = key_id;
  ct.handle = next_handle_++;
  ct.plaintext_bits = nbits;
  // lambda sizes the nonce; it carries no other meaning here.
  int nonce_bytes = (lambda + 7) / 8;
  ct.nonce.resize(nonce_bytes);
  for (int i = 0; i < nonce_bytes; ++i)
    ct.nonce[i] = static_cast<uint8_t>(nonce_rng_.bits(8));
  keys_.at(key_id).table[ct.handle] = {plaintext, nbits};
  return ct;
}

Ciphertext IdealQheScheme::enc(const SecretKey& sk, uint64_t plaintext, int nbits) {
  if (nbits < 0 || nbits > 63) throw std::invalid_argument("enc: bad plaintext width");
  if (nbits < 63 && (plaintext >> nbits) != 0)
    throw std::invalid_argument("enc: plaintext exceeds stated width");
  std::lock_guard<std::mutex> lock(mu_);
  auto it = keys_.find(sk.id);
  if (it == keys_.end()) throw std::invalid_argument("enc: unknown key");
  return enc_locked(sk.id, it->second.lambda, plaintext, nbits);
}

uint64_t IdealQheScheme::dec(const SecretKey& sk, const Ciphertext& ct) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = keys_.find(sk.id);
  if (it == keys_.end() || ct.key_id != sk.id)
    throw std::invalid_argument("dec: unknown key");
  auto jt = it->second.table.find(ct.handle);
  if (jt == it->second.table.end())
    throw std::invalid_argument("dec: malformed ciphertext");
  return jt->second.first;
}

uint64_t IdealQheScheme::plaintext_class(const Ciphertext& ct) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = keys_.find(ct.key_id);
  if (it == keys_.end()) throw std::invalid_argument("plaintext_class: unknown key");
  auto jt = it->second.table.find(ct.handle);
  if (jt == it->second.table.end())
    throw std::invalid_argument("plaintext_class: malformed ciphertext");
  return jt->second.first;
}

std::vector<IdealQheScheme::EvalBranch> IdealQheScheme::eval(
    const ClassicalOutputCircuit& circuit, const StateVector& reg,
    const Ciphertext& ct) {
  uint64_t x;
  int lambda;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = keys_.find(ct.key_id);
    if (it == keys_.end()) throw std::invalid_argument("eval: unknown key");
    auto jt = it->second.table.find(ct.handle);
    if (jt == it->second.table.end())
      throw std::invalid_argument("eval: malformed ciphertext");
    x = jt->second.first;
    lambda = it->second.lambda;
  }
  auto branches = measure(circuit.branch(x), reg);
  std::vector<EvalBranch> out;
  out.reserve(branches.size());
  std::lock_guard<std::mutex> lock(mu_);
  for (auto& b : branches) {
    StateVector post = b.post;
    if (b.probability > 0) {
      post.amps /= std::sqrt(b.probability);
      post.subnormalized = false;
    }
    out.push_back({enc_locked(ct.key_id, lambda, b.outcome, circuit.output_bits),
                   b.probability, std::move(post)});
  }
  return out;
}

double correctness_audit(IdealQheScheme& scheme,
                         const ClassicalOutputCircuit& circuit,
                         const StateVector& psi_ab, int a_qubits, uint64_t x) {
  const int total = psi_ab.num_qubits;
  const int b_qubits = total - a_qubits;
  std::vector<int> keep_b;
  for (int q = a_qubits; q < total; ++q) keep_b.push_back(q);

  // Game 1: run the circuit in the clear.
  std::unordered_map<uint64_t, Mat> game1;
  for (const auto& br : measure(circuit.branch(x), psi_ab)) {
    Mat rho = partial_trace(br.post.density(), total, keep_b);
    auto [it, fresh] = game1.try_emplace(br.outcome, rho);
    if (!fresh) it->second += rho;
  }

  // Game 2: encrypt, homomorphically evaluate, decrypt.
  SecretKey sk = scheme.gen(128);
  Ciphertext ct = scheme.enc(sk, x, circuit.input_bits);
  std::unordered_map<uint64_t, Mat> game2;
  for (const auto& br : scheme.eval(circuit, psi_ab, ct)) {
    uint64_t y = scheme.dec(sk, br.out);
    Mat rho = br.probability * partial_trace(br.post.density(), total, keep_b);
    auto [it, fresh] = game2.try_emplace(y, rho);
    if (!fresh) it->second += rho;
  }

  // (1/2)||.||_1 of the classical-quantum output states, block by block.
  double dist = 0;
  Mat zero = Mat::Zero(1 << b_qubits, 1 << b_qubits);
  for (const auto& [y, rho1] : game1) {
    auto it = game2.find(y);
    dist += trace_distance(rho1, it == game2.end() ? zero : it->second);
  }
  for (const auto& [y, rho2] : game2)
    if (!game1.count(y)) dist += trace_distance(zero, rho2);
  return dist;
}

}  // namespace cg

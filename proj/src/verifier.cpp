// SPDX-License-Identifier: Apache-2.0
#include "cg/verifier.hpp"

#include <cmath>

namespace cg {

namespace {
const double kOmegaStar = 0.5 + std::sqrt(2.0) / 4.0;
}

AliceQuestion AliceQuestion::chsh(const PauliMask& a, const PauliMask& b, int x) {
  if (a.dot(b) != 1)
    throw std::invalid_argument("AliceQuestion::chsh: a.b must be 1");
  return AliceQuestion{Kind::Chsh, a, b, x & 1};
}

AliceQuestion AliceQuestion::commutation(const PauliMask& a, const PauliMask& b) {
  if (a.dot(b) != 0)
    throw std::invalid_argument("AliceQuestion::commutation: a.b must be 0");
  return AliceQuestion{Kind::Commutation, a, b, 0};
}

AliceQuestion AliceQuestion::teleport(int n) {
  return AliceQuestion{Kind::Teleport, PauliMask::zero(n), PauliMask::zero(n), 0};
}

int AliceQuestion::answer_bits() const {
  switch (kind) {
    case Kind::Chsh:
      return 1;
    case Kind::Commutation:
      return 2;
    case Kind::Teleport:
      return 2 * n();
  }
  return 0;
}

std::vector<uint8_t> AliceQuestion::serialize() const {
  // tag byte + two fixed-width masks + x byte; identical length per variant.
  const int mask_bytes = (n() + 7) / 8;
  std::vector<uint8_t> out(1 + 2 * mask_bytes + 1, 0);
  out[0] = static_cast<uint8_t>(kind);
  for (int k = 0; k < mask_bytes; ++k) {
    out[1 + k] = static_cast<uint8_t>((a.bits >> (8 * k)) & 0xff);
    out[1 + mask_bytes + k] = static_cast<uint8_t>((b.bits >> (8 * k)) & 0xff);
  }
  out[1 + 2 * mask_bytes] = static_cast<uint8_t>(x);
  return out;
}

uint64_t AliceQuestion::key() const {
  return static_cast<uint64_t>(kind) | static_cast<uint64_t>(x) << 2 |
         static_cast<uint64_t>(a.bits) << 3 | static_cast<uint64_t>(b.bits) << 18;
}

ThmMainParams thm_main_parameters(double alpha, double beta) {
  if (beta <= alpha)
    throw std::invalid_argument("thm_main_parameters: need beta > alpha");
  double gap2 = (beta - alpha) * (beta - alpha);
  double kappa = std::min(0.5, gap2 / 64.0);
  double nu = kappa * (beta - alpha) / 8.0;
  return ThmMainParams{kappa, nu, nu};
}

double ProtocolConfig::effective_kappa() const {
  if (kappa > 0) return kappa;
  return thm_main_parameters(alpha, beta).kappa;
}

Mat BobObservables::w_obs(int q_b, const PauliMask& mask) const {
  const Mat& u = q_b == 0 ? u_z : u_x;
  Mat compact = pauli_z(mask);
  return u.adjoint() * embed_op(compact, measured_qubits, total_qubits) * u;
}

ProjectiveMeasurement BobObservables::pvm(int q_b) const {
  const Mat& u = q_b == 0 ? u_z : u_x;
  auto base = ProjectiveMeasurement::computational_basis(n);
  ProjectiveMeasurement out;
  out.outcomes = base.outcomes;
  for (const Mat& p : base.projectors)
    out.projectors.push_back(u.adjoint() *
                             embed_op(p, measured_qubits, total_qubits) * u);
  return out;
}

const KrausFamily& VerifierProver::family(const AliceQuestion& q) const {
  auto it = cache_.find(q.key());
  if (it == cache_.end()) it = cache_.emplace(q.key(), kraus_gen(q)).first;
  return it->second;
}

KrausFamily honest_alice_kraus(const AliceQuestion& q, int n, int total_qubits) {
  std::vector<int> alice(n);
  for (int i = 0; i < n; ++i) alice[i] = i;

  KrausFamily fam;
  fam.answer_bits = q.answer_bits();
  switch (q.kind) {
    case AliceQuestion::Kind::Chsh: {
      if (q.a.dot(q.b) != 1)
        throw std::invalid_argument("honest_alice_kraus: CHSH needs a.b = 1");
      Mat obs = (pauli_z(q.a) + (q.x ? -1.0 : 1.0) * pauli_x(q.b)) / std::sqrt(2.0);
      Mat full = embed_op(obs, alice, total_qubits);
      Mat id = Mat::Identity(full.rows(), full.cols());
      fam.ops = {{0, 0.5 * (id + full)}, {1, 0.5 * (id - full)}};
      break;
    }
    case AliceQuestion::Kind::Commutation: {
      if (q.a.dot(q.b) != 0)
        throw std::invalid_argument("honest_alice_kraus: commutation needs a.b = 0");
      Mat z = embed_op(pauli_z(q.a), alice, total_qubits);
      Mat x = embed_op(pauli_x(q.b), alice, total_qubits);
      Mat id = Mat::Identity(z.rows(), z.cols());
      for (uint64_t s0 = 0; s0 < 2; ++s0)
        for (uint64_t s1 = 0; s1 < 2; ++s1) {
          Mat pz = 0.5 * (id + (s0 ? -1.0 : 1.0) * z);
          Mat px = 0.5 * (id + (s1 ? -1.0 : 1.0) * x);
          fam.ops.push_back({s0 | (s1 << 1), pz * px});
        }
      break;
    }
    case AliceQuestion::Kind::Teleport: {
      // Bell measurement pairing witness qubit 2n+i with Alice qubit i;
      // answer is z || x with z the Z-correction bits.
      for (uint32_t z = 0; z < (1u << n); ++z)
        for (uint32_t x = 0; x < (1u << n); ++x) {
          Mat op = Mat::Identity(1 << total_qubits, 1 << total_qubits);
          for (int i = 0; i < n; ++i) {
            Vec bell = bell_pair_state((z >> i) & 1, (x >> i) & 1);
            op = op * embed_op(bell * bell.adjoint(), {2 * n + i, i}, total_qubits);
          }
          fam.ops.push_back(
              {static_cast<uint64_t>(z) | (static_cast<uint64_t>(x) << n), op});
        }
      break;
    }
  }
  return fam;
}

namespace {

BobObservables honest_bob(int n, int total_qubits) {
  BobObservables bob;
  bob.n = n;
  bob.total_qubits = total_qubits;
  for (int i = 0; i < n; ++i) bob.measured_qubits.push_back(n + i);
  const int dim = 1 << total_qubits;
  bob.u_z = Mat::Identity(dim, dim);
  Mat h(2, 2);
  double r = 1 / std::sqrt(2.0);
  h << r, r, r, -r;
  Mat hn = Mat::Identity(1, 1);
  for (int i = 0; i < n; ++i) hn = kron(hn, h);
  bob.u_x = embed_op(hn, bob.measured_qubits, total_qubits);
  return bob;
}

bool witness_is_pure(const Mat& rho, Vec& out) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  int top = static_cast<int>(rho.rows()) - 1;
  if (std::abs(es.eigenvalues()(top) - 1.0) > 1e-12) return false;
  out = es.eigenvectors().col(top);
  return true;
}

}  // namespace

VerifierProver honest_verifier_prover(const XXZZHamiltonian& h, const Mat& witness) {
  h.validate();
  const int n = h.n;
  if (witness.rows() != (1 << n))
    throw std::invalid_argument("honest_verifier_prover: witness dimension");
  Vec pure;
  Vec tail;  // witness (+ purifier) amplitudes
  int tail_qubits;
  if (witness_is_pure(witness, pure)) {
    tail = pure;
    tail_qubits = n;
  } else {
    tail = purify(witness, n).amps;
    tail_qubits = 2 * n;
  }
  const int total = 2 * n + tail_qubits;
  if (total > kMaxQubits)
    throw resource_error("honest_verifier_prover: more than 12 qubits");

  VerifierProver p;
  p.id = "honest";
  p.n = n;
  p.psi = StateVector(total, kron(epr_state(n).amps, tail));
  p.bob = honest_bob(n, total);
  p.kraus_gen = [n, total](const AliceQuestion& q) {
    return honest_alice_kraus(q, n, total);
  };
  return p;
}

VerifierProver lazy_verifier_prover(const XXZZHamiltonian& h) {
  const int n = h.n;
  const int dim = 1 << n;
  VerifierProver p;
  p.id = "lazy";
  p.n = n;
  p.psi = StateVector::computational(n, 0);
  p.bob.n = n;
  p.bob.total_qubits = n;
  for (int i = 0; i < n; ++i) p.bob.measured_qubits.push_back(i);
  p.bob.u_z = Mat::Identity(dim, dim);
  Mat hh(2, 2);
  double r = 1 / std::sqrt(2.0);
  hh << r, r, r, -r;
  Mat hn = Mat::Identity(1, 1);
  for (int i = 0; i < n; ++i) hn = kron(hn, hh);
  p.bob.u_x = hn;
  p.kraus_gen = [dim](const AliceQuestion& q) {
    return KrausFamily{{{0, Mat::Identity(dim, dim)}}, q.answer_bits()};
  };
  return p;
}

VerifierProver swapped_bob_prover(const XXZZHamiltonian& h, const Mat& witness) {
  VerifierProver p = honest_verifier_prover(h, witness);
  p.id = "swapped-bob";
  std::swap(p.bob.u_z, p.bob.u_x);
  return p;
}

VerifierProver rotated_bob_prover(const XXZZHamiltonian& h, const Mat& witness,
                                  double theta) {
  VerifierProver p = honest_verifier_prover(h, witness);
  p.id = "rotated-bob";
  Mat ry(2, 2);
  ry << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2),
      std::cos(theta / 2);
  Mat rn = Mat::Identity(1, 1);
  for (int i = 0; i < p.n; ++i) rn = kron(rn, ry);
  p.bob.u_x = embed_op(rn, p.bob.measured_qubits, p.bob.total_qubits);
  return p;
}

std::pair<AliceQuestion, int> sample_question(const ProtocolConfig& cfg,
                                              const QuestionDistributions& dists,
                                              Rng& rng) {
  const double kappa = cfg.effective_kappa();
  size_t subtest = rng.discrete({(1 - kappa) / 2, (1 - kappa) / 2, kappa});
  int q_b = static_cast<int>(rng.bits(1));
  if (subtest == 2) return {AliceQuestion::teleport(cfg.n), q_b};
  const auto& table = dists.conditioned(subtest == 0 ? 1 : 0);
  std::vector<double> w;
  w.reserve(table.size());
  for (const auto& e : table) w.push_back(e.p);
  const auto& e = table[rng.discrete(w)];
  if (subtest == 0)
    return {AliceQuestion::chsh(e.a, e.b, static_cast<int>(rng.bits(1))), q_b};
  return {AliceQuestion::commutation(e.a, e.b), q_b};
}

uint32_t honest_bob_measurement(int q_b, StateVector& reg, Rng& rng) {
  const int n = reg.num_qubits;
  BobObservables bob;
  bob.n = n;
  bob.total_qubits = n;
  for (int i = 0; i < n; ++i) bob.measured_qubits.push_back(i);
  const int dim = 1 << n;
  bob.u_z = Mat::Identity(dim, dim);
  Mat h(2, 2);
  double r = 1 / std::sqrt(2.0);
  h << r, r, r, -r;
  Mat hn = Mat::Identity(1, 1);
  for (int i = 0; i < n; ++i) hn = kron(hn, h);
  bob.u_x = hn;
  auto sampled = sample_measure(bob.pvm(q_b), reg, rng);
  reg = sampled.post;
  return static_cast<uint32_t>(sampled.outcome);
}

namespace {

// Teleport acceptance probability over the verifier's (w, term) randomness,
// given the answers. q_b = 0 checks Z terms against the X-correction half of
// s_a; q_b = 1 checks X terms against the Z-correction half.
double teleport_accept_prob(const XXZZHamiltonian& h, int n, uint64_t s_a,
                            uint32_t s_b, int q_b) {
  char checked = q_b == 0 ? 'Z' : 'X';
  double p = q_b == 0 ? h.sum_p('X') : h.sum_p('Z');  // auto-accept branch
  for (const auto& t : h.terms) {
    if (t.w != checked) continue;
    int parity = ((s_b >> t.i) ^ (s_b >> t.j)) & 1;
    if (t.w == 'Z')
      parity ^= static_cast<int>((s_a >> (n + t.i)) ^ (s_a >> (n + t.j))) & 1;
    else
      parity ^= static_cast<int>((s_a >> t.i) ^ (s_a >> t.j)) & 1;
    if (parity) p += t.p;
  }
  return p;
}

}  // namespace

bool verdict(const AliceQuestion& q, int q_b, uint64_t s_a, uint32_t s_b,
             const XXZZHamiltonian& h, Rng& rng) {
  const int n = q.n();
  switch (q.kind) {
    case AliceQuestion::Kind::Chsh: {
      PauliMask sb(n, s_b);
      int z = q_b == 0 ? q.a.dot(sb) : q.b.dot(sb);
      return ((static_cast<int>(s_a) + z) & 1) == (q.x & q_b);
    }
    case AliceQuestion::Kind::Commutation: {
      PauliMask sb(n, s_b);
      int z = q_b == 0 ? q.a.dot(sb) : q.b.dot(sb);
      return static_cast<int>((s_a >> q_b) & 1) == z;
    }
    case AliceQuestion::Kind::Teleport: {
      // Sample w; mismatch with the basis tag of q_b auto-accepts.
      double px = h.sum_p('X');
      int w = rng.uniform() < px ? 0 : 1;
      if ((w == 0) != (q_b == 1)) return true;
      char checked = w == 0 ? 'X' : 'Z';
      std::vector<double> tw;
      std::vector<const XXZZHamiltonian::Term*> terms;
      for (const auto& t : h.terms)
        if (t.w == checked) {
          tw.push_back(t.p);
          terms.push_back(&t);
        }
      const auto* t = terms[rng.discrete(tw)];
      int parity = ((s_b >> t->i) ^ (s_b >> t->j)) & 1;
      if (t->w == 'Z')
        parity ^= static_cast<int>((s_a >> (n + t->i)) ^ (s_a >> (n + t->j))) & 1;
      else
        parity ^= static_cast<int>((s_a >> t->i) ^ (s_a >> t->j)) & 1;
      return parity == 1;
    }
  }
  return false;
}

namespace {

// Exact acceptance of one question class: sum over Kraus branches and Bob
// outcomes with an accept predicate or probability.
double exact_question_value(const VerifierProver& prover, const AliceQuestion& q,
                            const ProjectiveMeasurement& pvm,
                            const std::function<double(uint64_t, uint32_t)>& accept) {
  const auto& fam = prover.family(q);
  double value = 0;
  for (const auto& op : fam.ops) {
    Vec branch = op.m * prover.psi.amps;
    if (branch.squaredNorm() < 1e-15) continue;
    for (size_t g = 0; g < pvm.outcomes.size(); ++g) {
      double pr = (pvm.projectors[g] * branch).squaredNorm();
      if (pr <= 0) continue;
      value += pr * accept(op.answer, static_cast<uint32_t>(pvm.outcomes[g]));
    }
  }
  return value;
}

}  // namespace

SubtestValues protocol_values(const VerifierProver& prover,
                              const XXZZHamiltonian& h, const ProtocolConfig& cfg) {
  auto dists = build_distributions(h);
  const int n = h.n;
  ProjectiveMeasurement bob_pvm[2] = {prover.bob.pvm(0), prover.bob.pvm(1)};
  SubtestValues out;

  if (!dists.x_empty()) {
    double chsh = 0;
    for (const auto& e : dists.d_q1)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          auto q = AliceQuestion::chsh(e.a, e.b, x);
          chsh += e.p * 0.25 *
                  exact_question_value(
                      prover, q, bob_pvm[y], [&](uint64_t sa, uint32_t sb) {
                        PauliMask m(n, sb);
                        int z = y == 0 ? e.a.dot(m) : e.b.dot(m);
                        return ((static_cast<int>(sa) + z) & 1) == (x & y) ? 1.0
                                                                           : 0.0;
                      });
        }
    out.p_chsh = chsh;

    double com = 0;
    for (const auto& e : dists.d_q0)
      for (int y = 0; y < 2; ++y) {
        auto q = AliceQuestion::commutation(e.a, e.b);
        com += e.p * 0.5 *
               exact_question_value(
                   prover, q, bob_pvm[y], [&](uint64_t sa, uint32_t sb) {
                     PauliMask m(n, sb);
                     int z = y == 0 ? e.a.dot(m) : e.b.dot(m);
                     return static_cast<int>((sa >> y) & 1) == z ? 1.0 : 0.0;
                   });
      }
    out.p_com = com;
  }

  double tel = 0;
  for (int y = 0; y < 2; ++y) {
    auto q = AliceQuestion::teleport(n);
    tel += 0.5 * exact_question_value(
                     prover, q, bob_pvm[y], [&](uint64_t sa, uint32_t sb) {
                       return teleport_accept_prob(h, n, sa, sb, y);
                     });
  }
  out.p_teleport = tel;

  if (out.p_chsh && out.p_com) {
    double kappa = cfg.effective_kappa();
    out.total = 0.5 * (1 - kappa) * (*out.p_chsh + *out.p_com) + kappa * tel;
  }
  return out;
}

CompletenessBreakdown completeness_exact(const XXZZHamiltonian& h,
                                         const Mat& witness,
                                         const ProtocolConfig& cfg) {
  auto prover = honest_verifier_prover(h, witness);
  CompletenessBreakdown out;
  out.subtests = protocol_values(prover, h, cfg);
  out.witness_energy = (h.matrix() * witness).trace().real();
  double kappa = cfg.effective_kappa();
  out.formula_simulated = 0.5 * (1 - kappa) * (kOmegaStar + 1.0) +
                          kappa * (0.75 - 0.25 * out.witness_energy);
  out.formula_alt = 0.5 * (1 - kappa) * (kOmegaStar + 1.0) +
                      kappa * (1.0 - 0.25 * out.witness_energy);
  return out;
}

MonteCarloStats run_verifier_rounds(const ProtocolConfig& cfg,
                                    const XXZZHamiltonian& h,
                                    const VerifierProver& prover, long rounds,
                                    Rng& rng) {
  auto dists = build_distributions(h);
  ProjectiveMeasurement bob_pvm[2] = {prover.bob.pvm(0), prover.bob.pvm(1)};
  for (auto& pvm : bob_pvm) pvm.validate();

  // First-round branches depend only on the question; cache them.
  struct Branches {
    std::vector<double> w;
    std::vector<Vec> post;  // renormalized
    std::vector<uint64_t> answers;
  };
  std::map<uint64_t, Branches> cache;
  auto branches_for = [&](const AliceQuestion& q) -> const Branches& {
    auto it = cache.find(q.key());
    if (it != cache.end()) return it->second;
    Branches br;
    for (const auto& op : prover.family(q).ops) {
      Vec v = op.m * prover.psi.amps;
      double weight = v.squaredNorm();
      if (weight > 0) v /= std::sqrt(weight);
      br.w.push_back(weight);
      br.post.push_back(std::move(v));
      br.answers.push_back(op.answer);
    }
    return cache.emplace(q.key(), std::move(br)).first->second;
  };

  MonteCarloStats stats;
  for (long r = 0; r < rounds; ++r) {
    auto [q, q_b] = sample_question(cfg, dists, rng);
    int subtest = q.kind == AliceQuestion::Kind::Chsh        ? 0
                  : q.kind == AliceQuestion::Kind::Commutation ? 1
                                                               : 2;
    const auto& br = branches_for(q);
    size_t ai = rng.discrete(br.w);
    uint64_t s_a = br.answers[ai];
    const Vec& post = br.post[ai];

    const auto& pvm = bob_pvm[q_b];
    std::vector<double> bw(pvm.outcomes.size());
    for (size_t g = 0; g < pvm.outcomes.size(); ++g)
      bw[g] = (pvm.projectors[g] * post).squaredNorm();
    auto s_b = static_cast<uint32_t>(pvm.outcomes[rng.discrete(bw)]);

    // Teleport bookkeeping for the energy cross-check: record the corrected
    // term value whenever the verifier runs a check.
    bool accept;
    if (q.kind == AliceQuestion::Kind::Teleport) {
      double px = h.sum_p('X');
      int wcoin = rng.uniform() < px ? 0 : 1;
      if ((wcoin == 0) != (q_b == 1)) {
        accept = true;
      } else {
        char checked = wcoin == 0 ? 'X' : 'Z';
        std::vector<double> tw;
        std::vector<const XXZZHamiltonian::Term*> terms;
        for (const auto& t : h.terms)
          if (t.w == checked) {
            tw.push_back(t.p);
            terms.push_back(&t);
          }
        const auto* t = terms[rng.discrete(tw)];
        int parity = ((s_b >> t->i) ^ (s_b >> t->j)) & 1;
        if (t->w == 'Z')
          parity ^= static_cast<int>((s_a >> (h.n + t->i)) ^ (s_a >> (h.n + t->j))) & 1;
        else
          parity ^= static_cast<int>((s_a >> t->i) ^ (s_a >> t->j)) & 1;
        accept = parity == 1;
        double value = parity ? -1.0 : 1.0;
        if (t->w == 'X') {
          ++stats.checked_x;
          stats.corrected_x_sum += value;
        } else {
          ++stats.checked_z;
          stats.corrected_z_sum += value;
        }
      }
    } else {
      accept = verdict(q, q_b, s_a, s_b, h, rng);
    }
    ++stats.rounds;
    ++stats.subtest_rounds[subtest];
    stats.accepts += accept;
    stats.subtest_accepts[subtest] += accept;
  }
  return stats;
}

namespace {

double kraus_expectation(const VerifierProver& prover, const AliceQuestion& q,
                         const Mat& observable) {
  double v = 0;
  for (const auto& op : prover.family(q).ops) {
    Vec branch = op.m * prover.psi.amps;
    v += (branch.adjoint() * observable * branch)(0).real();
  }
  return v;
}

}  // namespace

double zxz_residual(const VerifierProver& prover, const QuestionDistributions& d,
                    int u1, int u2, int i, int j) {
  const int n = d.n;
  auto q = AliceQuestion::teleport(n);
  const auto& fam = prover.family(q);
  double total = 0;
  for (uint32_t abits = 0; abits < (1u << n); ++abits) {
    PauliMask a(n, abits);
    for (const auto& [b, pb] : d.d_x) {
      double weight = pb / static_cast<double>(1u << n);
      Mat za = prover.bob.w_obs(0, a);
      Mat xb = prover.bob.w_obs(1, b);
      double sign = a.dot(b) ? -1.0 : 1.0;
      Mat m = sign * za * xb * za - xb;
      for (const auto& op : fam.ops) {
        if (static_cast<int>((op.answer >> i) & 1) != u1) continue;
        if (static_cast<int>((op.answer >> j) & 1) != u2) continue;
        Vec branch = op.m * prover.psi.amps;
        total += weight * (branch.adjoint() * m * branch)(0).real();
      }
    }
  }
  return total;
}

std::pair<double, double> energy_estimates(const VerifierProver& prover,
                                           const QuestionDistributions& d) {
  const int n = d.n;
  auto q = AliceQuestion::teleport(n);
  const auto& fam = prover.family(q);

  auto estimate = [&](bool x_type) {
    const auto& table = x_type ? d.d_x : d.d_z;
    double total = 0;
    for (const auto& [mask, p] : table) {
      // Recover the term indices from the two-local mask.
      int ti = -1, tj = -1;
      for (int k = 0; k < n; ++k)
        if (mask.bit(k)) (ti < 0 ? ti : tj) = k;
      Mat obs = prover.bob.w_obs(x_type ? 1 : 0, mask);
      for (const auto& op : fam.ops) {
        // X terms are corrected by the Z-half of the answer, Z terms by the
        // X-half.
        uint64_t c1 = x_type ? (op.answer >> ti) : (op.answer >> (n + ti));
        uint64_t c2 = x_type ? (op.answer >> tj) : (op.answer >> (n + tj));
        double sign = ((c1 ^ c2) & 1) ? -1.0 : 1.0;
        Vec branch = op.m * prover.psi.amps;
        total += p * sign * (branch.adjoint() * obs * branch)(0).real();
      }
    }
    return total;
  };
  return {estimate(true), estimate(false)};
}

Mat swap_isometry(const BobObservables& bob) {
  const int n = bob.n;
  const int d = 1 << bob.total_qubits;
  Vec phi_pairs = epr_state(n).amps;  // H_Q (x) H_A, pair i = (Q_i, A_i)
  std::vector<int> a_reg(n);
  for (int i = 0; i < n; ++i) a_reg[i] = n + i;
  Mat v = Mat::Zero(d * (1 << (2 * n)), d);
  const double w = std::pow(2.0, -n);
  // Operator order X(v) Z(u) (x) 1 (x) sX(v) sZ(u): this is the order under
  // which the Pauli-statistics claims hold exactly for arbitrary U_Z, U_X.
  for (uint32_t u = 0; u < (1u << n); ++u)
    for (uint32_t x = 0; x < (1u << n); ++x) {
      PauliMask um(n, u), xm(n, x);
      Mat prover_op = bob.w_obs(1, xm) * bob.w_obs(0, um);
      Mat pauli = embed_op(pauli_x(xm) * pauli_z(um), a_reg, 2 * n);
      Vec vec = pauli * phi_pairs;
      v += w * kron(prover_op, Mat(vec));
    }
  return v;
}

IsometryCheck isometry_pauli_check(const BobObservables& bob, const Vec& phi,
                                   const PauliMask& mask, bool x_type) {
  const int n = bob.n;
  Mat v = swap_isometry(bob);
  Vec image = v * phi;
  const int total = bob.total_qubits + 2 * n;
  std::vector<int> keep;
  for (int i = 0; i < n; ++i) keep.push_back(bob.total_qubits + i);
  Mat rho = partial_trace_vec(image, total, keep);
  Mat pauli = x_type ? pauli_x(mask) : pauli_z(mask);
  double lhs = (pauli * rho).trace().real();

  double rhs = 0;
  if (!x_type) {
    for (uint32_t u = 0; u < (1u << n); ++u) {
      PauliMask um(n, u);
      Mat zz = bob.w_obs(0, um) * bob.w_obs(0, um ^ mask);
      rhs += (phi.adjoint() * zz * phi)(0).real();
    }
    rhs /= static_cast<double>(1u << n);
  } else {
    for (uint32_t u = 0; u < (1u << n); ++u)
      for (uint32_t w = 0; w < (1u << n); ++w) {
        PauliMask um(n, u), wm(n, w);
        double sign = um.dot(mask) ? -1.0 : 1.0;
        Mat op = bob.w_obs(0, um) * bob.w_obs(1, wm ^ mask) * bob.w_obs(1, wm) *
                 bob.w_obs(0, um);
        rhs += sign * (phi.adjoint() * op * phi)(0).real();
      }
    rhs /= static_cast<double>(1u << (2 * n));
  }
  return IsometryCheck{lhs, rhs, std::abs(lhs - rhs)};
}

Mat extract_witness(const VerifierProver& prover, const QuestionDistributions& d) {
  const int n = d.n;
  if (n > 2) throw resource_error("extract_witness: n must be at most 2");
  Mat v = swap_isometry(prover.bob);
  const int total = prover.bob.total_qubits + 2 * n;
  std::vector<int> keep;
  for (int i = 0; i < n; ++i) keep.push_back(prover.bob.total_qubits + i);

  auto q = AliceQuestion::teleport(n);
  Mat rho = Mat::Zero(1 << n, 1 << n);
  for (const auto& op : prover.family(q).ops) {
    Vec image = v * (op.m * prover.psi.amps);
    Mat rho_alpha = partial_trace_vec(image, total, keep);
    uint32_t z = static_cast<uint32_t>(op.answer) & ((1u << n) - 1);
    uint32_t x = static_cast<uint32_t>(op.answer >> n) & ((1u << n) - 1);
    Mat corr = pauli_x(PauliMask(n, x)) * pauli_z(PauliMask(n, z));
    rho += corr * rho_alpha * corr.adjoint();
  }
  return rho;
}

SoundnessReport subtest_residuals(const VerifierProver& prover,
                                  const XXZZHamiltonian& h) {
  auto dists = build_distributions(h);
  const int n = h.n;
  ProtocolConfig cfg;
  cfg.n = n;
  SoundnessReport rep;
  auto vals = protocol_values(prover, h, cfg);
  rep.p_chsh = vals.p_chsh;
  rep.p_com = vals.p_com;
  rep.p_teleport = vals.p_teleport;
  rep.eps_chsh = vals.p_chsh ? std::max(0.0, kOmegaStar - *vals.p_chsh) : 0.0;
  rep.eps_com = vals.p_com ? std::max(0.0, 1.0 - *vals.p_com) : 0.0;

  auto tele = AliceQuestion::teleport(n);
  double slack_sum = 0;
  for (const auto& e : dists.d_q1) {
    Mat za = prover.bob.w_obs(0, e.a), xb = prover.bob.w_obs(1, e.b);
    Mat anti_sq = matrix_abs_sq(za * xb + xb * za);
    auto q0 = AliceQuestion::chsh(e.a, e.b, 0);
    double on_chsh = kraus_expectation(prover, q0, anti_sq);
    rep.anticom_residual += e.p * on_chsh;
    rep.slack_anticom += e.p * std::abs(kraus_expectation(prover, tele, anti_sq) -
                                        on_chsh);
    // Claims slack of the embedded CHSH game: (Z(a)+X(b))^2/4 distinguishes
    // the two plaintext classes.
    Mat m = (za + xb) * (za + xb) / 4.0;
    auto q1 = AliceQuestion::chsh(e.a, e.b, 1);
    slack_sum += e.p * std::abs(kraus_expectation(prover, q1, m) -
                                kraus_expectation(prover, q0, m));
  }
  rep.slack_claims = slack_sum;
  rep.anticom_bound = 96 * std::sqrt(2.0) * rep.eps_chsh + 12 * slack_sum;

  for (const auto& e : dists.d_q0) {
    Mat za = prover.bob.w_obs(0, e.a), xb = prover.bob.w_obs(1, e.b);
    Mat com_sq = matrix_abs_sq(za * xb - xb * za);
    auto q = AliceQuestion::commutation(e.a, e.b);
    double on_com = kraus_expectation(prover, q, com_sq);
    rep.com_residual += e.p * on_com;
    rep.slack_com += e.p * std::abs(kraus_expectation(prover, tele, com_sq) - on_com);
  }
  rep.com_bound = 128 * rep.eps_com;

  for (uint32_t abits = 0; abits < (1u << n); ++abits) {
    PauliMask a(n, abits);
    for (const auto& [b, pb] : dists.d_x) {
      double weight = pb / static_cast<double>(1u << n);
      Mat za = prover.bob.w_obs(0, a), xb = prover.bob.w_obs(1, b);
      double sign = a.dot(b) ? -1.0 : 1.0;
      Mat m = matrix_abs_sq(sign * za * xb - xb * za);
      rep.phase_residual += weight * kraus_expectation(prover, tele, m);
    }
  }
  rep.phase_bound = 0.5 * (rep.anticom_residual + rep.com_residual) +
                    0.5 * (rep.slack_anticom + rep.slack_com);

  rep.zxz_bound = std::sqrt(std::max(0.0, rep.phase_residual));
  for (const auto& [mask, p] : dists.d_x) {
    (void)p;
    int ti = -1, tj = -1;
    for (int k = 0; k < n; ++k)
      if (mask.bit(k)) (ti < 0 ? ti : tj) = k;
    for (int u1 = 0; u1 < 2; ++u1)
      for (int u2 = 0; u2 < 2; ++u2)
        rep.zxz_max = std::max(
            rep.zxz_max, std::abs(zxz_residual(prover, dists, u1, u2, ti, tj)));
  }

  auto [ehx, ehz] = energy_estimates(prover, dists);
  rep.e_hx = ehx;
  rep.e_hz = ehz;

  if (n <= 2) {
    Mat rho = extract_witness(prover, dists);
    rep.extracted_trace = rho.trace().real();
    rep.extracted_min_eig = min_eigenvalue(rho);
    rep.extracted_energy = (h.matrix() * rho).trace().real();
    double ez = 0, ex = 0;
    for (const auto& [mask, p] : dists.d_z)
      ez += p * (pauli_z(mask) * rho).trace().real();
    for (const auto& [mask, p] : dists.d_x)
      ex += p * (pauli_x(mask) * rho).trace().real();
    rep.single_rho_z_residual = std::abs(ez - ehz);
    rep.single_rho_x_residual = std::abs(ex - ehx);
  }
  return rep;
}

}  // namespace cg

// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "cg/provers.hpp"

using namespace cg;

namespace {
constexpr double kTsirelson = 0.85355339059327373;

CompiledProtocol chsh_protocol() {
  return compile(chsh_game(), std::make_shared<IdealQheScheme>(42), 128);
}
}  // namespace

TEST_CASE("honest compiled CHSH prover attains the nonlocal value") {
  auto proto = chsh_protocol();
  auto prover = honest_chsh_compiled();
  prover.validate();
  CHECK(compiled_value_exact(proto, prover) ==
        doctest::Approx(kTsirelson).epsilon(1e-9));
}

TEST_CASE("compiled value of a deterministic strategy equals its nonlocal value") {
  auto proto = chsh_protocol();
  auto strat = constant_chsh_strategy(0, 0);
  auto prover = honest_compiled_prover(strat, proto);
  CHECK(compiled_value_exact(proto, prover) ==
        doctest::Approx(quantum_value(proto.game, strat)));
  CHECK(compiled_value_exact(proto, prover) == doctest::Approx(0.75));
}

TEST_CASE("constant, random, and cheating provers") {
  auto proto = chsh_protocol();
  CHECK(compiled_value_exact(proto, constant_answer_chsh(0, 0)) == doctest::Approx(0.75));
  CHECK(compiled_value_exact(proto, random_answer_chsh()) == doctest::Approx(0.5));
  CHECK(compiled_value_exact(proto, plaintext_reading_cheat()) == doctest::Approx(1.0));
}

TEST_CASE("Kraus validity audit") {
  for (auto prover : {honest_chsh_compiled(), random_answer_chsh(),
                      plaintext_reading_cheat(), constant_answer_chsh(1, 0)}) {
    prover.validate();
    for (const auto& [cls, fam] : prover.first_round) {
      (void)cls;
      CHECK_NOTHROW(fam.validate());
    }
  }
}

TEST_CASE("completeness sum over first-round branches is 1") {
  for (auto prover : {honest_chsh_compiled(), plaintext_reading_cheat()}) {
    for (uint64_t cls = 0; cls < 2; ++cls) {
      double total = 0;
      for (auto& [a, psi] : post_measurement_states(prover, cls)) {
        (void)a;
        total += psi.norm_sq();
        CHECK(psi.subnormalized);
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("post-measurement states of the honest prover are two half-weight branches") {
  auto prover = honest_chsh_compiled();
  auto states = post_measurement_states(prover, 0);
  REQUIRE(states.size() == 2);
  CHECK(states[0].second.norm_sq() == doctest::Approx(0.5));
  CHECK(states[1].second.norm_sq() == doctest::Approx(0.5));
}

TEST_CASE("rank-1 projective family on |0> leaves a single surviving branch") {
  auto prover = random_answer_chsh();
  // Replace the state so the measured note qubit is |0>.
  prover.state = StateVector(2, kron(Vec::Unit(2, 0), Vec::Ones(2) / std::sqrt(2.0)));
  auto states = post_measurement_states(prover, 0);
  CHECK(states[0].second.norm_sq() == doctest::Approx(1.0));
  CHECK(states[1].second.norm_sq() == doctest::Approx(0.0));
}

TEST_CASE("decrypted observable") {
  auto prover = honest_chsh_compiled();
  for (uint64_t cls = 0; cls < 2; ++cls) {
    auto obs = decrypted_observable(prover, cls);
    CHECK(is_hermitian(obs.matrix));
    CHECK(is_identity(obs.matrix * obs.matrix));
  }
  // <psi| A^{Enc(0)} B^0 |psi> = 1/sqrt2 for the canonical strategy.
  auto a0 = decrypted_observable(prover, 0).matrix;
  const auto& b0pvm = prover.second_round.at(0);
  Mat b0 = b0pvm.projectors[0] - b0pvm.projectors[1];
  cplx v = (prover.state.amps.adjoint() * a0 * b0 * prover.state.amps)(0);
  CHECK(v.real() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-10));

  // Constant-0 prover: A^c = identity.
  auto id_obs = decrypted_observable(constant_answer_chsh(0, 0), 1);
  CHECK(is_identity(id_obs.matrix));
}

TEST_CASE("compiled commutation game: honest prover accepts always") {
  auto proto = compile(commutation_game(), std::make_shared<IdealQheScheme>(1), 128);
  auto prover = commutation_honest_compiled();
  CHECK(compiled_value_exact(proto, prover) == doctest::Approx(1.0));
  Rng rng(3);
  for (int i = 0; i < 50; ++i) CHECK(run_round(proto, prover, rng).accept);
}

TEST_CASE("commutation zx prover succeeds with probability 3/4") {
  auto proto = compile(commutation_game(), std::make_shared<IdealQheScheme>(1), 128);
  CHECK(compiled_value_exact(proto, commutation_zx_compiled()) == doctest::Approx(0.75));
}

TEST_CASE("transcripts decrypt consistently and rounds are reproducible") {
  auto proto = chsh_protocol();
  auto prover = honest_chsh_compiled();
  Rng r1(99), r2(99);
  for (int i = 0; i < 20; ++i) {
    auto t1 = run_round(proto, prover, r1);
    auto t2 = run_round(proto, prover, r2);
    CHECK(t1.x == t2.x);
    CHECK(t1.b == t2.b);
    CHECK(t1.accept == t2.accept);
    CHECK(t1.a == proto.scheme->dec(SecretKey{t1.alpha.key_id, 128}, t1.alpha));
    CHECK(t1.accept == proto.game.predicate(t1.x, t1.y, t1.a, t1.b));
    CHECK(transcript_to_json_line(t1).find("accept") != std::string::npos);
  }
}

TEST_CASE("Monte Carlo agrees with the exact compiled value at 3 sigma") {
  auto proto = chsh_protocol();
  auto prover = honest_chsh_compiled();
  double exact = compiled_value_exact(proto, prover);
  Rng rng(2024);
  const int n = 100000;
  int wins = 0;
  for (int i = 0; i < n; ++i) wins += run_round(proto, prover, rng).accept;
  double emp = static_cast<double>(wins) / n;
  double sigma = std::sqrt(exact * (1 - exact) / n);
  CHECK(std::abs(emp - exact) < 3 * sigma);
}

TEST_CASE("nonce-dependent strategies are rejected") {
  auto proto = chsh_protocol();
  auto prover = honest_chsh_compiled();
  prover.nonce_dependent = true;
  CHECK_THROWS_AS(compiled_value_exact(proto, prover), unsupported_strategy_error);
}

TEST_CASE("mixtures average component values") {
  auto proto = chsh_protocol();
  auto mix = mixture({honest_chsh_compiled(), random_answer_chsh()}, {0.7, 0.3});
  mix.validate();
  CHECK(compiled_value_exact(proto, mix) ==
        doctest::Approx(0.7 * kTsirelson + 0.3 * 0.5).epsilon(1e-9));

  auto mix3 = mixture({honest_chsh_compiled(), random_answer_chsh(),
                       plaintext_reading_cheat()},
                      {0.5, 0.25, 0.25});
  mix3.validate();
  CHECK(compiled_value_exact(proto, mix3) ==
        doctest::Approx(0.5 * kTsirelson + 0.25 * 0.5 + 0.25).epsilon(1e-9));
}

TEST_CASE("rotated prover value follows the cosine law") {
  auto proto = chsh_protocol();
  for (double phi : {0.0, 0.3, 0.6, M_PI / 4}) {
    CHECK(compiled_value_exact(proto, rotated_chsh_compiled(phi)) ==
          doctest::Approx(0.5 + (std::cos(phi) + std::sin(phi)) / 4).epsilon(1e-10));
  }
}

// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "cg/certificates.hpp"
#include "cg/provers.hpp"

using namespace cg;

namespace {
constexpr double kTsirelson = 0.85355339059327373;
const double kSqrt2 = std::sqrt(2.0);

std::vector<CompiledProverStrategy> chsh_roster() {
  return {honest_chsh_compiled(),
          rotated_chsh_compiled(0.0),
          rotated_chsh_compiled(0.35),
          rotated_chsh_compiled(0.6),
          constant_answer_chsh(0, 0),
          random_answer_chsh(),
          plaintext_reading_cheat(),
          mixture({honest_chsh_compiled(), random_answer_chsh()}, {0.5, 0.5}),
          mixture({plaintext_reading_cheat(), honest_chsh_compiled()}, {0.5, 0.5})};
}
}  // namespace

TEST_CASE("Gamma of the honest prover") {
  auto gamma = gamma_from_strategy(honest_chsh_compiled());
  const double r = 1 / kSqrt2;
  CHECK(gamma.at(GVar::A0, GVar::B0).real() == doctest::Approx(r).epsilon(1e-10));
  CHECK(gamma.at(GVar::A0, GVar::B1).real() == doctest::Approx(r).epsilon(1e-10));
  CHECK(gamma.at(GVar::A1, GVar::B0).real() == doctest::Approx(r).epsilon(1e-10));
  CHECK(gamma.at(GVar::A1, GVar::B1).real() == doctest::Approx(-r).epsilon(1e-10));
  CHECK(gamma.at(GVar::B0, GVar::B0).real() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(gamma.at(GVar::A0, GVar::A1) == cplx(0, 0));
  CHECK_NOTHROW(gamma.validate());
}

TEST_CASE("Gamma entries stay bounded for a constant-answer prover") {
  auto gamma = gamma_from_strategy(constant_answer_chsh(0, 0));
  for (auto i : {GVar::A0, GVar::A1})
    for (auto j : {GVar::B0, GVar::B1})
      CHECK(std::abs(gamma.at(i, j)) <= 1 + 1e-12);
}

TEST_CASE("Gamma diagonal is 1 for the whole roster") {
  for (const auto& prover : chsh_roster()) {
    auto gamma = gamma_from_strategy(prover);
    for (int i = 0; i < 4; ++i)
      CHECK(std::abs(gamma.m(i, i) - cplx(1, 0)) < 1e-10);
  }
}

TEST_CASE("pseudo-expectation basics") {
  auto gamma = gamma_from_strategy(honest_chsh_compiled());
  CHECK(pseudo_expectation(gamma, Poly2::one()) == cplx(1, 0));
  CHECK(std::abs(pseudo_expectation(gamma, Poly2::commutator(GVar::A0, GVar::B0))) <
        1e-12);
  CHECK(std::abs(pseudo_expectation(gamma, Poly2::square_deficit(GVar::A0))) < 1e-12);
  CHECK(std::abs(pseudo_expectation(gamma, Poly2::square_deficit(GVar::B1))) < 1e-10);
}

TEST_CASE("pseudo-expectation of the game polynomial is the winning probability") {
  auto proto = compile(chsh_game(), std::make_shared<IdealQheScheme>(), 128);
  for (const auto& prover : chsh_roster()) {
    auto gamma = gamma_from_strategy(prover);
    double p = compiled_value_exact(proto, prover);
    CHECK(pseudo_expectation(gamma, Poly2::chsh_game_polynomial()).real() ==
          doctest::Approx(p).epsilon(1e-10));
    // <p_CHSH> form: 8 (value - 1/2).
    CHECK(pseudo_expectation(gamma, Poly2::chsh_polynomial()).real() ==
          doctest::Approx(8 * (p - 0.5)).epsilon(1e-9));
  }
}

TEST_CASE("nonlocal SoS identity over random commuting instantiations") {
  CHECK(verify_nonlocal_sos_identity(20, 7) <= 1e-9);

  // All-identity instantiation: both sides (4 - 2 sqrt2) * I.
  Mat id4 = Mat::Identity(4, 4);
  Mat q1 = id4 - (id4 + id4) / kSqrt2;
  Mat q2 = id4 - (id4 - id4) / kSqrt2;
  Mat lhs = q1 * q1 + q2 * q2;
  Mat rhs = 4 * id4 - kSqrt2 * (id4 + id4 + id4 - id4);
  CHECK(max_abs(lhs - rhs) <= 1e-12);
}

TEST_CASE("canonical observables reach <p_CHSH> = 2 sqrt2") {
  auto s = canonical_chsh_strategy();
  Mat a0 = s.alice_pvms[0].projectors[0] - s.alice_pvms[0].projectors[1];
  Mat a1 = s.alice_pvms[1].projectors[0] - s.alice_pvms[1].projectors[1];
  Mat b0 = s.bob_pvms[0].projectors[0] - s.bob_pvms[0].projectors[1];
  Mat b1 = s.bob_pvms[1].projectors[0] - s.bob_pvms[1].projectors[1];
  Mat p = kron(a0, b0) + kron(a0, b1) + kron(a1, b0) - kron(a1, b1);
  cplx v = (s.state.amps.adjoint() * p * s.state.amps)(0);
  CHECK(v.real() == doctest::Approx(2 * kSqrt2).epsilon(1e-9));
}

TEST_CASE("win probability decomposition is exact for every prover") {
  for (const auto& prover : chsh_roster()) {
    auto d = win_prob_decomposition_check(prover);
    CHECK(d.residual <= 1e-9);
    CHECK(d.qform_identity_residual <= 1e-9);
  }
}

TEST_CASE("honest decomposition values") {
  auto d = win_prob_decomposition_check(honest_chsh_compiled());
  CHECK(d.p_win == doctest::Approx(kTsirelson).epsilon(1e-9));
  CHECK(d.reconstructed == doctest::Approx(kTsirelson).epsilon(1e-9));
  CHECK(d.qform_sum == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("constant-answer prover: q-form sum = 8 sqrt2 (omega* - 3/4)") {
  auto d = win_prob_decomposition_check(constant_answer_chsh(0, 0));
  CHECK(d.p_win == doctest::Approx(0.75));
  CHECK(d.qform_sum ==
        doctest::Approx(8 * kSqrt2 * (0.5 + kSqrt2 / 4 - 0.75)).epsilon(1e-9));
}

TEST_CASE("claims q1/q2: q_j Gamma q_j vs E_mu[(a-b)^2] with measured slack") {
  auto sos = SoSDecomposition::chsh();
  for (const auto& prover : chsh_roster()) {
    auto gamma = gamma_from_strategy(prover);
    for (int j = 0; j < 2; ++j) {
      int sign = j == 0 ? 1 : -1;
      double qform = sos.quadratic_form(gamma, j);
      double emu = mu_expectation(prover, j, sign);
      double slack = claims_slack(prover, sign);
      CHECK(emu >= 0.0);
      CHECK(std::abs(qform - emu) <= slack + 1e-9);
      CHECK(qform >= -slack - 1e-9);
    }
  }
}

TEST_CASE("claims are exact for oblivious-slack provers") {
  auto sos = SoSDecomposition::chsh();
  for (const auto& prover :
       {honest_chsh_compiled(), rotated_chsh_compiled(0.4), random_answer_chsh()}) {
    auto gamma = gamma_from_strategy(prover);
    CHECK(claims_slack(prover, 1) < 1e-9);
    CHECK(claims_slack(prover, -1) < 1e-9);
    CHECK(std::abs(sos.quadratic_form(gamma, 0) - mu_expectation(prover, 0, 1)) <
          1e-9);
    CHECK(std::abs(sos.quadratic_form(gamma, 1) - mu_expectation(prover, 1, -1)) <
          1e-9);
    CHECK(sos.quadratic_form(gamma, 0) >= -1e-9);
    CHECK(sos.quadratic_form(gamma, 1) >= -1e-9);
  }
}

TEST_CASE("macroscopic locality: tight-1 identity holds for every prover") {
  for (const auto& prover : chsh_roster()) {
    auto d = macroscopic_diagnostics(prover);
    CHECK(d.tight1_residual <= 1e-9);
    CHECK(d.jensen_slack_max <= 1e-9);  // |corr|^2 <= Delta
    CHECK(d.delta0_plus >= 0.0);
    CHECK(d.delta1_minus >= 0.0);
  }
}

TEST_CASE("macroscopic locality: honest prover numbers") {
  auto d = macroscopic_diagnostics(honest_chsh_compiled());
  CHECK(d.delta1_plus + d.delta1_minus == doctest::Approx(4.0).epsilon(1e-9));
  // Jensen is tight at optimality for the + combination on class 0.
  CHECK(d.corr0_plus * d.corr0_plus ==
        doctest::Approx(d.delta0_plus).epsilon(1e-9));
}

TEST_CASE("signalling cheats obey Delta0(+) - Delta1(+) >= 16 eps") {
  std::vector<CompiledProverStrategy> cheats = {
      plaintext_reading_cheat(),
      mixture({plaintext_reading_cheat(), honest_chsh_compiled()}, {0.6, 0.4}),
      mixture({plaintext_reading_cheat(), honest_chsh_compiled()}, {0.3, 0.7})};
  for (const auto& prover : cheats) {
    auto d = macroscopic_diagnostics(prover);
    double eps = d.p_win - kTsirelson;
    REQUIRE(eps > 0.0);
    CHECK(d.delta0_plus + d.delta1_minus >= 4 + 16 * eps - 1e-9);
    CHECK(d.delta0_plus - d.delta1_plus >= 16 * eps - 1e-9);
  }
}

TEST_CASE("anticommutator residual: honest is zero, parallel observables give 4") {
  CHECK(anticommutator_residual(honest_chsh_compiled()) <= 1e-8);
  // B0 = B1 = sigma_Z: {B0,B1}^2 = 4 I.
  CHECK(anticommutator_residual(rotated_chsh_compiled(0.0)) ==
        doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("anticommutator rigidity bound across noise sweeps") {
  auto proto = compile(chsh_game(), std::make_shared<IdealQheScheme>(), 128);
  const double bound_c = 96 * kSqrt2;

  // Under-rotated observables.
  for (int i = 0; i <= 9; ++i) {
    double phi = M_PI / 4 * i / 9.0;
    auto prover = rotated_chsh_compiled(phi);
    double eps = kTsirelson - compiled_value_exact(proto, prover);
    double res = anticommutator_residual(prover);
    CHECK(res <= bound_c * eps + 1e-8);
  }
  // Depolarizing mixtures with the random-answer prover.
  for (int i = 0; i <= 9; ++i) {
    double lam = i / 9.0;
    auto prover = lam < 1.0
                      ? mixture({honest_chsh_compiled(), random_answer_chsh()},
                                {lam, 1 - lam})
                      : honest_chsh_compiled();
    double eps = kTsirelson - compiled_value_exact(proto, prover);
    double res = anticommutator_residual(prover);
    CHECK(res <= bound_c * eps + 1e-8);
  }
}

TEST_CASE("commutator residual: honest zero; Z/X on |0> gives 4 at eps = 1/4") {
  auto proto = compile(commutation_game(), std::make_shared<IdealQheScheme>(), 128);
  CHECK(commutator_residual(commutation_honest_compiled()) <= 1e-10);

  auto zx = commutation_zx_compiled();
  double eps = 1.0 - compiled_value_exact(proto, zx);
  CHECK(eps == doctest::Approx(0.25));
  CHECK(commutator_residual(zx) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(commutator_residual(zx) <= 128 * eps);
}

TEST_CASE("commutator rigidity bound across a noise sweep") {
  auto proto = compile(commutation_game(), std::make_shared<IdealQheScheme>(), 128);
  for (int i = 0; i <= 9; ++i) {
    double lam = i / 10.0;
    auto prover = mixture({commutation_honest_compiled(), commutation_zx_compiled()},
                          {1 - lam, lam});
    double eps = 1.0 - compiled_value_exact(proto, prover);
    CHECK(commutator_residual(prover) <= 128 * eps + 1e-9);
  }
}

TEST_CASE("distinguisher advantage") {
  // x-oblivious prover: zero for any observable.
  auto rnd = random_answer_chsh();
  Mat m = Mat::Identity(4, 4) * 0.5;
  CHECK(distinguisher_advantage(rnd, {{0, 1.0}}, {{1, 1.0}}, m) <= 1e-12);

  // Honest prover with the normalized (B0+B1)^2 observable.
  auto honest = honest_chsh_compiled();
  Mat b0 = bob_observable(honest, 0), b1 = bob_observable(honest, 1);
  Mat obs = (b0 + b1) * (b0 + b1) / 4.0;
  CHECK(distinguisher_advantage(honest, {{0, 1.0}}, {{1, 1.0}}, obs) <= 1e-9);

  // The plaintext cheat lights up on a note-register observable.
  auto cheat = plaintext_reading_cheat();
  Mat note1(2, 2);
  note1 << 0, 0, 0, 1;
  CHECK(distinguisher_advantage(cheat, {{0, 1.0}}, {{1, 1.0}}, note1) ==
        doctest::Approx(1.0));

  // Observables outside [0,1] are rejected.
  CHECK_THROWS_AS(distinguisher_advantage(rnd, {{0, 1.0}}, {{1, 1.0}},
                                          Mat(2.0 * Mat::Identity(4, 4))),
                  std::invalid_argument);
}

TEST_CASE("non-CHSH-shaped provers are rejected") {
  CHECK_THROWS_AS(gamma_from_strategy(commutation_honest_compiled()),
                  std::invalid_argument);
}

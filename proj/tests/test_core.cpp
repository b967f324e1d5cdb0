// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "cg/measurement.hpp"
#include "cg/pauli.hpp"
#include "cg/rng.hpp"
#include "cg/state.hpp"

using namespace cg;

namespace {

// Independent 2x2 Paulis and kron, used as the oracle for pauli_z/pauli_x.
Mat sigma_z2() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
Mat sigma_x2() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
Mat kron_oracle(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

}  // namespace

TEST_CASE("pauli masks: identity and single-qubit Z") {
  CHECK(max_abs(pauli_z(PauliMask(3, 0)) - Mat::Identity(8, 8)) == 0.0);
  Mat z1 = pauli_z(PauliMask(1, 1));
  CHECK(z1(0, 0) == cplx(1, 0));
  CHECK(z1(1, 1) == cplx(-1, 0));
  CHECK(max_abs(pauli_x(PauliMask(1, 1)) - sigma_x2()) == 0.0);
}

TEST_CASE("pauli operators match tensor-product oracle") {
  // n=2, a=11, b=11: direct 4x4 oracle.
  Mat zz = kron_oracle(sigma_z2(), sigma_z2());
  Mat xx = kron_oracle(sigma_x2(), sigma_x2());
  CHECK(max_abs(pauli_z(PauliMask(2, 0b11)) - zz) == 0.0);
  CHECK(max_abs(pauli_x(PauliMask(2, 0b11)) - xx) == 0.0);
  CHECK(std::abs((zz * xx).trace()) < 1e-12);
  // a.b = 0 mod 2 here, so ZZ and XX commute: both products equal -Y(x)Y.
  CHECK(max_abs(zz * xx - xx * zz) < 1e-12);

  // Mixed masks, qubit 0 = most significant index: a = e_0 -> sigma_Z (x) I.
  CHECK(max_abs(pauli_z(PauliMask(2, 0b01)) -
                kron_oracle(sigma_z2(), Mat::Identity(2, 2))) == 0.0);
  CHECK(max_abs(pauli_z(PauliMask(2, 0b10)) -
                kron_oracle(Mat::Identity(2, 2), sigma_z2())) == 0.0);
}

TEST_CASE("pauli operators are Hermitian unitary involutions") {
  Rng rng(11);
  for (int n = 1; n <= 4; ++n) {
    for (int t = 0; t < 4; ++t) {
      PauliMask a(n, static_cast<uint32_t>(rng.bits(n)));
      Mat z = pauli_z(a), x = pauli_x(a);
      CHECK(is_hermitian(z));
      CHECK(is_unitary(z));
      CHECK(is_identity(z * z));
      CHECK(is_hermitian(x));
      CHECK(is_unitary(x));
      CHECK(is_identity(x * x));
    }
  }
}

TEST_CASE("mask composition sigma_W(a) sigma_W(a') = sigma_W(a xor a')") {
  Rng rng(12);
  for (int t = 0; t < 8; ++t) {
    int n = 3;
    PauliMask a(n, static_cast<uint32_t>(rng.bits(n)));
    PauliMask b(n, static_cast<uint32_t>(rng.bits(n)));
    CHECK(max_abs(pauli_z(a) * pauli_z(b) - pauli_z(a ^ b)) < 1e-10);
    CHECK(max_abs(pauli_x(a) * pauli_x(b) - pauli_x(a ^ b)) < 1e-10);
  }
}

TEST_CASE("Z(a) X(b) = (-1)^{a.b} X(b) Z(a)") {
  Rng rng(13);
  for (int n = 1; n <= 4; ++n) {
    for (int t = 0; t < 6; ++t) {
      PauliMask a(n, static_cast<uint32_t>(rng.bits(n)));
      PauliMask b(n, static_cast<uint32_t>(rng.bits(n)));
      double sign = a.dot(b) ? -1.0 : 1.0;
      CHECK(max_abs(pauli_z(a) * pauli_x(b) - sign * pauli_x(b) * pauli_z(a)) <
            1e-10);
    }
  }
}

TEST_CASE("pauli dimension overflow raises resource error") {
  CHECK_THROWS_AS(pauli_z(PauliMask(13, 0)), resource_error);
}

TEST_CASE("epr state: single pair and correlations") {
  StateVector phi = epr_state(1);
  CHECK(phi.amps(0).real() == doctest::Approx(1 / std::sqrt(2)));
  CHECK(phi.amps(3).real() == doctest::Approx(1 / std::sqrt(2)));
  CHECK(std::abs(phi.amps(1)) == 0.0);
  CHECK(std::abs(phi.amps(2)) == 0.0);

  Mat zz = kron_oracle(sigma_z2(), sigma_z2());
  Mat xx = kron_oracle(sigma_x2(), sigma_x2());
  CHECK((phi.amps.adjoint() * zz * phi.amps)(0).real() == doctest::Approx(1.0));
  CHECK((phi.amps.adjoint() * xx * phi.amps)(0).real() == doctest::Approx(1.0));
}

TEST_CASE("epr state: Z(a) (x) Z(a) correlation is 1 for all masks, n=2") {
  StateVector phi = epr_state(2);
  for (uint32_t bits = 0; bits < 4; ++bits) {
    PauliMask a(2, bits);
    // Alice register = qubits 0..1, Bob register = qubits 2..3.
    Mat za = pauli_z(a);
    Mat op = kron(za, za);
    cplx v = (phi.amps.adjoint() * op * phi.amps)(0);
    CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("state-dependent norm") {
  StateVector phi = epr_state(1);
  CHECK(state_dependent_norm_sq(Mat::Identity(4, 4), phi) ==
        doctest::Approx(1.0));
  CHECK(state_dependent_norm_sq(Mat::Zero(4, 4), phi) == 0.0);
  CHECK_THROWS_AS(state_dependent_norm_sq(Mat::Identity(2, 2), phi),
                  std::invalid_argument);
}

TEST_CASE("Cauchy-Schwarz for the state-dependent norm, 50 random pairs") {
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    int dim = 4;
    Mat a(dim, dim), b(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        a(i, j) = cplx(rng.normal(), rng.normal());
        b(i, j) = cplx(rng.normal(), rng.normal());
      }
    StateVector psi(2, random_state_vector(dim, rng));
    cplx cross = (psi.amps.adjoint() * a.adjoint() * b * psi.amps)(0);
    double lhs = std::abs(cross);
    double rhs = std::sqrt(state_dependent_norm_sq(a, psi)) *
                 std::sqrt(state_dependent_norm_sq(b, psi));
    CHECK(lhs <= rhs + 1e-10);
  }
}

TEST_CASE("measure: computational basis and sigma_X eigenbasis") {
  StateVector zero = StateVector::computational(1, 0);
  auto branches = measure(ProjectiveMeasurement::computational_basis(1), zero);
  CHECK(branches[0].probability == doctest::Approx(1.0));
  CHECK(branches[1].probability == doctest::Approx(0.0));
  CHECK(branches[0].post.subnormalized);

  auto xobs = BinaryObservable::from_matrix(sigma_x2());
  auto xb = measure(xobs.to_pvm(), zero);
  CHECK(xb[0].probability == doctest::Approx(0.5));
  CHECK(xb[1].probability == doctest::Approx(0.5));
}

TEST_CASE("measure: Bob observable (Z+X)/sqrt2 on an EPR half has uniform marginal") {
  StateVector phi = epr_state(1);
  Mat bob = (sigma_z2() + sigma_x2()) / std::sqrt(2.0);
  Mat full = kron(Mat::Identity(2, 2), bob);
  auto pvm = BinaryObservable::from_matrix(full).to_pvm();
  auto branches = measure(pvm, phi);
  CHECK(branches[0].probability == doctest::Approx(0.5));
  CHECK(branches[1].probability == doctest::Approx(0.5));
}

TEST_CASE("measure: probabilities sum to 1 and reconstruction preserves trace") {
  Rng rng(31);
  StateVector psi(2, random_state_vector(4, rng));
  auto m = ProjectiveMeasurement::computational_basis(2);
  auto branches = measure(m, psi);
  double total = 0;
  Mat rec = Mat::Zero(4, 4);
  for (auto& b : branches) {
    total += b.probability;
    rec += b.post.density();
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rec.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("invalid PVM rejected") {
  ProjectiveMeasurement bad;
  bad.outcomes = {0, 1};
  bad.projectors = {Mat::Identity(2, 2), Mat::Identity(2, 2)};
  StateVector zero = StateVector::computational(1, 0);
  CHECK_THROWS_AS(measure(bad, zero), std::invalid_argument);
}

TEST_CASE("partial trace") {
  // Trace out Bob half of an EPR pair -> maximally mixed.
  StateVector phi = epr_state(1);
  Mat reduced = partial_trace(phi.density(), 2, {0});
  CHECK(max_abs(reduced - 0.5 * Mat::Identity(2, 2)) < 1e-12);

  // Keep everything -> unchanged.
  Mat all = partial_trace(phi.density(), 2, {0, 1});
  CHECK(max_abs(all - phi.density()) < 1e-12);

  // Product state |0> (x) |+>, keep qubit 1 -> |+><+|.
  Vec plus(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  Vec prod = kron(Vec::Unit(2, 0), plus);
  StateVector ps(2, prod);
  Mat kept = partial_trace(ps.density(), 2, {1});
  Mat expect = plus * plus.adjoint();
  CHECK(max_abs(kept - expect) < 1e-12);

  CHECK_THROWS_AS(partial_trace(phi.density(), 2, {2}), std::invalid_argument);
}

TEST_CASE("partial trace preserves trace and positivity on random states") {
  Rng rng(41);
  for (int t = 0; t < 5; ++t) {
    StateVector psi(3, random_state_vector(8, rng));
    Mat red = partial_trace(psi.density(), 3, {0, 2});
    CHECK(red.trace().real() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(min_eigenvalue(red) > -1e-10);
  }
}

TEST_CASE("matrix_abs_sq") {
  Rng rng(51);
  Mat u = random_unitary(4, rng);
  CHECK(is_identity(matrix_abs_sq(u)));

  // {Z, X} = 0 on one qubit.
  Mat anti = sigma_z2() * sigma_x2() + sigma_x2() * sigma_z2();
  CHECK(max_abs(matrix_abs_sq(anti)) < 1e-12);

  Mat a(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = cplx(rng.normal(), rng.normal());
  CHECK(min_eigenvalue(matrix_abs_sq(a)) > -1e-10);
  CHECK_THROWS_AS(matrix_abs_sq(Mat::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("purification reproduces the density matrix") {
  Rng rng(61);
  Mat rho = random_density(4, rng);
  StateVector psi = purify(rho, 2);
  CHECK(psi.norm_sq() == doctest::Approx(1.0));
  Mat back = partial_trace(psi.density(), 4, {0, 1});
  CHECK(max_abs(back - rho) < 1e-10);
}

// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "cg/block_encoding.hpp"

using namespace cg;

namespace {
Mat sz() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
Mat sx() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
}  // namespace

TEST_CASE("V_+ encodes (Z + X)/2 in its 0,0 block") {
  auto e = block_encode_bpm(sz(), sx(), +1);
  CHECK(e.audit() < 1e-12);
  Mat expect = (sz() + sx()) / 2.0;  // direct 4x4 oracle: top-left block
  CHECK(max_abs(e.encoded_block() - expect) < 1e-12);
  CHECK(e.scale == 0.5);
}

TEST_CASE("V_- with B0 = B1 = I encodes the zero block") {
  Mat id = Mat::Identity(2, 2);
  auto e = block_encode_bpm(id, id, -1);
  CHECK(e.audit() < 1e-12);
  CHECK(max_abs(e.encoded_block()) < 1e-12);
}

TEST_CASE("squared encoding matches the dense square") {
  Rng rng(5);
  for (int sign : {+1, -1}) {
    Mat b0 = random_binary_observable(4, rng);
    Mat b1 = random_binary_observable(4, rng);
    auto e = block_encode_bpm_squared(b0, b1, sign);
    CHECK(e.audit() < 1e-10);
    Mat lc = b0 + static_cast<double>(sign) * b1;
    CHECK(max_abs(e.encoded_block() - 0.25 * (lc * lc)) < 1e-10);
  }
}

TEST_CASE("bracket encodings: anticommuting Paulis") {
  // {Z,X} = 0, so the anticommutator block vanishes; [Z,X] = 2iY gives 4I.
  auto anti = block_encode_anticommutator_sq(sz(), sx());
  CHECK(anti.audit() < 1e-12);
  CHECK(max_abs(anti.encoded_block()) < 1e-12);

  auto comm = block_encode_commutator_sq(sz(), sx());
  CHECK(comm.audit() < 1e-12);
  CHECK(max_abs(comm.encoded_block() - Mat::Identity(2, 2)) < 1e-12);
  CHECK(max_abs(comm.target - 4.0 * Mat::Identity(2, 2)) < 1e-12);
}

TEST_CASE("bracket encodings against dense products on random observables") {
  Rng rng(6);
  for (int t = 0; t < 5; ++t) {
    Mat b0 = random_binary_observable(2, rng);
    Mat b1 = random_binary_observable(2, rng);
    auto anti = block_encode_anticommutator_sq(b0, b1);
    auto comm = block_encode_commutator_sq(b0, b1);
    CHECK(anti.audit() < 1e-10);
    CHECK(comm.audit() < 1e-10);
    Mat acm = b0 * b1 + b1 * b0;
    Mat ccm = b0 * b1 - b1 * b0;
    CHECK(max_abs(anti.encoded_block() - 0.25 * acm.adjoint() * acm) < 1e-10);
    CHECK(max_abs(comm.encoded_block() - 0.25 * ccm.adjoint() * ccm) < 1e-10);
  }
}

TEST_CASE("shifted encoding of sigma_Z is diag(5/6, 1/2)") {
  auto e = shifted_block_encoding(sz());
  CHECK(e.audit() < 1e-12);
  Mat h = e.target;
  CHECK(h(0, 0).real() == doctest::Approx(5.0 / 6));
  CHECK(h(1, 1).real() == doctest::Approx(0.5));
  CHECK(e.scale == doctest::Approx(6.0 / 5));
}

TEST_CASE("zero operator is rejected") {
  // B0 = -B1 makes B0+B1 = 0, so r = 0 in the shifted wrapper.
  auto base = block_encode_bpm(sz(), Mat(-sz()), +1);
  CHECK_THROWS_AS(shifted_block_encoding(base, 0.0), std::invalid_argument);
}

TEST_CASE("shifted spectrum lies in [1/2, 5/6] for random B with norm <= sqrt2") {
  Rng rng(7);
  for (int t = 0; t < 6; ++t) {
    Mat b0 = random_binary_observable(2, rng);
    Mat b1 = random_binary_observable(2, rng);
    auto base = block_encode_bpm(b0, b1, t % 2 ? 1 : -1);
    double r = spectral_norm_hermitian(base.target);
    if (r < 1e-9) continue;
    auto e = shifted_block_encoding(base, r);
    CHECK(e.audit() < 1e-10);
    Eigen::SelfAdjointEigenSolver<Mat> es(e.target, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= 0.5 - 1e-10);
    CHECK(es.eigenvalues().maxCoeff() <= 5.0 / 6 + 1e-10);
  }
}

TEST_CASE("spectral measurement oracle") {
  // sigma_Z on |0><0|: outcome +1 with probability 1.
  Mat rho0 = Mat::Zero(2, 2);
  rho0(0, 0) = 1.0;
  auto s = spectral_measure(sz(), rho0, 1e-3);
  double p_plus = 0;
  for (auto& b : s)
    if (b.value > 0) p_plus += b.probability;
  CHECK(p_plus == doctest::Approx(1.0));

  // Traceless observable on the maximally mixed state: mean 0.
  Mat mixed = 0.5 * Mat::Identity(2, 2);
  Mat obs = (sz() + sx()) / std::sqrt(2.0);
  CHECK(std::abs(spectral_mean(spectral_measure(obs, mixed, 1e-3))) < 1e-10);
}

TEST_CASE("spectral mean equals tr[B rho] on 50 random cases") {
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    int dim = 4;
    Mat g(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
    Mat b = 0.5 * (g + Mat(g.adjoint()));
    Mat rho = random_density(dim, rng);
    double mean = spectral_mean(spectral_measure(b, rho, 1e-6));
    double expect = (b * rho).trace().real();
    CHECK(mean == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("non-binary inputs are rejected") {
  Mat notb = 0.5 * sz();
  CHECK_THROWS_AS(block_encode_bpm(notb, sx(), +1), std::invalid_argument);
  CHECK_THROWS_AS(block_encode_bpm_squared(sz(), notb, -1), std::invalid_argument);
}

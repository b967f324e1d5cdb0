// SPDX-License-Identifier: Apache-2.0
#include "cg/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace cg {

size_t Rng::discrete(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("Rng::discrete: negative weight");
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("Rng::discrete: zero total weight");
  double r = uniform() * total;
  double acc = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (r < acc) return i;
  }
  return weights.size() - 1;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  double u2 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  double mag = std::sqrt(-2.0 * std::log(u1));
  spare_ = mag * std::sin(2.0 * M_PI * u2);
  have_spare_ = true;
  return mag * std::cos(2.0 * M_PI * u2);
}

Mat random_unitary(int dim, Rng& rng) {
  Mat g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  // Fix the phase ambiguity of QR so the distribution is Haar.
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    cplx d = r(j, j);
    double a = std::abs(d);
    q.col(j) *= (a > 0 ? d / a : cplx(1, 0));
  }
  return q;
}

Mat random_binary_observable(int dim, Rng& rng) {
  Mat u = random_unitary(dim, rng);
  Vec d(dim);
  for (int i = 0; i < dim; ++i) d(i) = (rng.bits(1) ? -1.0 : 1.0);
  return u * d.asDiagonal() * u.adjoint();
}

Vec random_state_vector(int dim, Rng& rng) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = cplx(rng.normal(), rng.normal());
  v.normalize();
  return v;
}

Mat random_density(int dim, Rng& rng) {
  Mat g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  Mat rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

}  // namespace cg

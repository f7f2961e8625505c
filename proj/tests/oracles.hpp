// Copyright 2026 The synthdp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent oracles shared by the unit tests and the acceptance binary.

#ifndef SYNTHDP_TESTS_ORACLES_HPP_
#define SYNTHDP_TESTS_ORACLES_HPP_

#include <cmath>
#include <limits>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "synthdp/accountant/prior_work.hpp"
#include "synthdp/mathkit/quadrature.hpp"
#include "synthdp/mathkit/rng.hpp"
#include "synthdp/mathkit/special.hpp"

namespace synthdp::oracle {

using Matrix = Eigen::MatrixXd;

inline Matrix random_matrix(int rows, int cols, RngStream& rng) {
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = rng.normal();
  }
  return m;
}

// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the signs
// of R's diagonal absorbed into Q.
inline Matrix random_orthogonal(int d, RngStream& rng) {
  const Matrix g = random_matrix(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    if (r(i, i) < 0) q.col(i) *= -1;
  }
  return q;
}

// Rotation exp(S) for a random skew-symmetric S with entries of size scale.
inline Matrix random_rotation_near_identity(int d, double scale, RngStream& rng) {
  Matrix skew = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      skew(i, j) = scale * rng.normal();
      skew(j, i) = -skew(i, j);
    }
  }
  // Cayley transform: orthogonal and close to exp(2S) for small S.
  const Matrix eye = Matrix::Identity(d, d);
  return (eye - skew).inverse() * (eye + skew);
}

// Minimum of ||v - U w|| over 10^6 random orthogonal U: half drawn from the
// Haar measure, half as shrinking random perturbations of the incumbent.
inline double random_orthogonal_search(const Matrix& v, const Matrix& w, RngStream& rng) {
  const int d = static_cast<int>(v.rows());
  const int draws = 1000000;
  double best = std::numeric_limits<double>::infinity();
  Matrix incumbent = Matrix::Identity(d, d);
  for (int i = 0; i < draws / 2; ++i) {
    const Matrix u = random_orthogonal(d, rng);
    const double dist = (v - u * w).norm();
    if (dist < best) best = dist, incumbent = u;
  }
  double scale = 0.1;
  for (int i = 0; i < draws / 2; ++i) {
    if (i % 50000 == 49999) scale *= 0.3;
    const Matrix u = incumbent * random_rotation_near_identity(d, scale, rng);
    const double dist = (v - u * w).norm();
    if (dist < best) best = dist, incumbent = u;
  }
  return best;
}

// int_0^1 |f'(t)|^{1-alpha} dt for f(t) = max(G(t), 1 - t - gap), where
// G(t) = Phi(Phi^{-1}(1-t) - Delta), after substituting t = Phi(-z). The
// active branch is chosen pointwise by comparing the two curves.
inline double tradeoff_integral(double alpha, double delta, double gap) {
  auto gaussian_wins = [&](double z) {
    return std_normal_cdf(z - delta) - (std_normal_cdf(z) - gap);
  };
  auto integrand = [&](double z) {
    const double slope_term = gaussian_wins(z) >= 0
                                  ? std::exp((1 - alpha) * (z * delta - delta * delta / 2))
                                  : 1.0;
    return slope_term * std_normal_pdf(z);
  };
  std::vector<double> cuts{-60.0};
  const double step = 1e-3;
  for (double z = -60; z < 60; z += step) {
    if (std::signbit(gaussian_wins(z)) != std::signbit(gaussian_wins(z + step))) {
      double lo = z, hi = z + step;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (std::signbit(gaussian_wins(mid)) == std::signbit(gaussian_wins(lo)) ? lo : hi) =
            mid;
      }
      cuts.push_back(0.5 * (lo + hi));
    }
  }
  cuts.push_back(60.0);
  double total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total +=
        adaptive_quadrature(integrand, cuts[i], cuts[i + 1], QuadratureOptions{0, 1e-13, 20000})
            .value;
  }
  return total;
}

inline std::vector<PriorWorkParams> prior_grid() {
  std::vector<PriorWorkParams> grid;
  for (double alpha : {1.5, 2.0, 4.0, 6.0}) {
    for (auto [d, n, delta] : {std::tuple{60, 1, 1.0}, {200, 1, 0.8}, {30, 2, 2.0},
                              {500, 3, 0.5}, {100, 1, 1.5}}) {
      PriorWorkParams p;
      p.alpha = alpha;
      p.d = d;
      p.n_syn = n;
      p.delta_sens = delta;
      grid.push_back(p);
    }
  }
  return grid;
}

}  // namespace synthdp::oracle

#endif  // SYNTHDP_TESTS_ORACLES_HPP_

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

// Fisher information of chi^2_d(theta^2) with respect to theta: quadrature of
// the squared score, and two Monte-Carlo estimators.

#ifndef SYNTHDP_ESTIMATORS_FISHER_HPP_
#define SYNTHDP_ESTIMATORS_FISHER_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "synthdp/distributions/finite_n.hpp"
#include "synthdp/distributions/ncx2.hpp"
#include "synthdp/mathkit/errors.hpp"
#include "synthdp/mathkit/peaked.hpp"
#include "synthdp/mathkit/rng.hpp"
#include "synthdp/mathkit/special.hpp"

namespace synthdp {

// int score(x)^2 p_theta(x) dx, integrated over u = log x.
inline double fisher_quadrature_ncx2(int d, double theta, double tol = 1e-10) {
  require(d >= 3, "fisher_quadrature_ncx2: requires d >= 3");
  require(std::isfinite(theta) && theta > 0.0, "fisher_quadrature_ncx2: requires theta > 0");
  const NoncentralChiSq dist(d, theta);
  auto log_mass = [&](double u) { return ncx2_log_pdf(dist, std::exp(u)) + u; };
  const double step = std::min(0.5, 0.5 * internal::ncx2_log_scale(dist));
  const auto window = find_log_window(log_mass, std::log(dist.mean()), step);
  auto integrand = [&](double u) {
    const double x = std::exp(u);
    const double s = ncx2_score(dist, x).value;
    return s * s * std::exp(log_mass(u) - window.peak_log);
  };
  const auto result = integrate_window(integrand, window, tol);
  return result.value * std::exp(window.peak_log);
}

struct McEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
};

struct FisherMc {
  McEstimate score_squared;  // mean of score^2 over chi^2_d(theta^2)
  McEstimate rician;         // mean of Y (R_{d/2-1}(Y) - R_{d/2}(Y)), Y = theta sqrt(chi^2_{d+2}(theta^2))
};

namespace internal {

class RunningMoments {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / count_;
    m2_ += delta * (x - mean_);
  }
  McEstimate estimate() const {
    if (count_ < 2) return {mean_, 0.0};
    return {mean_, std::sqrt(m2_ / (count_ - 1) / count_)};
  }

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace internal

inline FisherMc fisher_mc_ncx2(int d, double theta, std::int64_t n_samples, RngStream& rng) {
  require(d >= 1, "fisher_mc_ncx2: requires d >= 1");
  require(theta >= 0.0, "fisher_mc_ncx2: requires theta >= 0");
  require(n_samples >= 1000, "fisher_mc_ncx2: requires n_samples >= 1000");
  FisherMc out;
  if (theta == 0.0) return out;
  RngStream score_rng = rng.split(1);
  RngStream rician_rng = rng.split(2);
  const NoncentralChiSq dist(d, theta);
  const NoncentralChiSq shifted(d + 2, theta);
  internal::RunningMoments score_sq, rician;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const double s = ncx2_score(dist, sample_ncx2(dist, score_rng)).value;
    score_sq.add(s * s);
    const double y = theta * std::sqrt(sample_ncx2(shifted, rician_rng));
    rician.add(y * (internal::bessel_quotient_half_dof(d, y) - bessel_quotient(0.5 * d, y)));
  }
  out.score_squared = score_sq.estimate();
  out.rician = rician.estimate();
  return out;
}

}  // namespace synthdp

#endif  // SYNTHDP_ESTIMATORS_FISHER_HPP_

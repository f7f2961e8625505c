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

// Renyi-DP implied by the earlier f-DP analysis of linear-generator
// synthetic data, which shifts the Gaussian trade-off curve by 2 C_{n,k,d}.

#ifndef SYNTHDP_ACCOUNTANT_PRIOR_WORK_HPP_
#define SYNTHDP_ACCOUNTANT_PRIOR_WORK_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>

#include "synthdp/accountant/bounds.hpp"
#include "synthdp/mathkit/errors.hpp"
#include "synthdp/mathkit/quadrature.hpp"
#include "synthdp/mathkit/special.hpp"

namespace synthdp {

struct PriorWorkParams {
  double c_prime = 1.0;  // unspecified absolute constant of the earlier analysis
  std::int64_t n_syn = 1;
  int d = 2;
  int k = 1;
  double delta_sens = 1.0;
  double alpha = 2.0;

  void validate() const {
    require(c_prime > 0.0, "PriorWorkParams: c_prime must be > 0");
    require(n_syn >= 1, "PriorWorkParams: n_syn must be >= 1");
    require(k >= 1 && d > k, "PriorWorkParams: requires d > k >= 1");
    require(std::isfinite(delta_sens) && delta_sens >= 0.0,
            "PriorWorkParams: delta must be >= 0");
    require(alpha > 1.0, "PriorWorkParams: alpha must be > 1");
  }

  // C' k sqrt(n_syn / (d - k)).
  double shift() const {
    return c_prime * k * std::sqrt(static_cast<double>(n_syn) / (d - k));
  }
};

struct NoAmplificationThreshold {
  double threshold = 0.0;
  bool amplified = false;
};

// Delta below 2 C' k sqrt(2 pi n / (d - k)) gives no amplification.
inline NoAmplificationThreshold prior_no_amplification_threshold(const PriorWorkParams& p) {
  p.validate();
  const double pi = 3.14159265358979323846;
  NoAmplificationThreshold out;
  out.threshold = 2.0 * p.c_prime * p.k *
                  std::sqrt(2.0 * pi * static_cast<double>(p.n_syn) / (p.d - p.k));
  out.amplified = p.delta_sens > 0.0 && p.delta_sens >= out.threshold;
  return out;
}

struct PriorConversion {
  double l_alpha = 0.0;
  std::optional<double> z_minus;
  std::optional<double> z_plus;
  // True when the shifted trade-off curve meets the Gaussian one, so the
  // three-piece formula applies.
  bool amplified = false;
};

// Renyi divergence of order alpha implied by the trade-off function
//   f(t) = max(G_Delta(t), 1 - t - 2 C_{n,k,d}).
inline PriorConversion prior_rdp_conversion(const PriorWorkParams& p, double tol = 1e-14) {
  const auto regime = prior_no_amplification_threshold(p);
  const double delta = p.delta_sens;
  const double gap = 2.0 * p.shift();
  PriorConversion out;
  out.l_alpha = rdp_gaussian(p.alpha, delta);
  // The threshold is a sufficient condition; the curves also fail to meet
  // when the largest Gaussian gap 2 Phi(Delta/2) - 1 is below the shift.
  const double widest = std::erf(delta / (2.0 * std::sqrt(2.0)));
  if (!regime.amplified || widest <= gap) return out;

  const double half = 0.5 * delta;
  const double z_plus = bisect(
      [&](double z) { return std_normal_cdf(z) - std_normal_cdf(z - delta) - gap; }, half,
      half + 10.0, tol);
  const double z_minus = delta - z_plus;
  const double am1 = p.alpha - 1.0;
  const double tails = std_normal_cdf(z_minus + am1 * delta) +
                       std_normal_cdf(-(z_plus + am1 * delta));
  const double middle = std_normal_cdf(z_plus) - std_normal_cdf(z_minus);
  out.l_alpha =
      std::log(std::exp(p.alpha * am1 * delta * delta / 2.0) * tails + middle) / am1;
  out.z_minus = z_minus;
  out.z_plus = z_plus;
  out.amplified = true;
  return out;
}

// Gaussian trade-off G_Delta(x) = Phi(Phi^{-1}(1 - x) - Delta) for x in [0, 1].
inline double gaussian_tradeoff(double delta, double x) {
  require(x >= 0.0 && x <= 1.0, "gaussian_tradeoff: requires x in [0, 1]");
  if (x == 0.0) return 1.0;
  if (x == 1.0) return 0.0;
  return std_normal_cdf(-std_normal_quantile(x) - delta);
}

// Lower trade-off curve of the earlier analysis: max(G_Delta(x), 1 - x - 2 C_{n,k,d}).
inline double prior_lower_tradeoff(const PriorWorkParams& p, double x) {
  p.validate();
  return std::max(gaussian_tradeoff(p.delta_sens, x), 1.0 - x - 2.0 * p.shift());
}

struct CounterexampleValues {
  double fisher_cauchy = 0.0;
  double fisher_gauss = 0.0;
  double renyi2_cauchy = 0.0;
  double renyi2_gauss = 0.0;
};

// Cauchy location family with scale a against N(., sigma^2): a larger Fisher
// information need not give a larger order-2 divergence.
inline CounterexampleValues counterexample_demo(double a, double sigma, double delta) {
  require(a > 0.0 && sigma > 0.0, "counterexample_demo: a and sigma must be > 0");
  require(delta > 0.0, "counterexample_demo: delta must be > 0");
  CounterexampleValues out;
  out.fisher_cauchy = 1.0 / (2.0 * a * a);
  out.fisher_gauss = 1.0 / (sigma * sigma);
  out.renyi2_cauchy = std::log1p(delta * delta / (2.0 * a * a));
  out.renyi2_gauss = delta * delta / (sigma * sigma);
  return out;
}

}  // namespace synthdp

#endif  // SYNTHDP_ACCOUNTANT_PRIOR_WORK_HPP_

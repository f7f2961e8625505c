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

// Non-central chi-squared law chi^2_d(theta^2) parametrised by its amplitude
// theta >= 0: log-density, score in theta, and an exact sampler.

#ifndef SYNTHDP_DISTRIBUTIONS_NCX2_HPP_
#define SYNTHDP_DISTRIBUTIONS_NCX2_HPP_

#include <cmath>
#include <limits>
#include <numbers>

#include "synthdp/mathkit/errors.hpp"
#include "synthdp/mathkit/rng.hpp"
#include "synthdp/mathkit/special.hpp"

namespace synthdp {

struct NoncentralChiSq {
  int d = 1;           // degrees of freedom
  double theta = 0.0;  // amplitude; non-centrality is theta^2

  NoncentralChiSq() = default;
  NoncentralChiSq(int dof, double amplitude) : d(dof), theta(amplitude) {
    require(d >= 1, "NoncentralChiSq: d must be >= 1");
    require(std::isfinite(theta) && theta >= 0.0,
            "NoncentralChiSq: theta must be finite and >= 0");
  }

  double mean() const { return d + theta * theta; }
  double variance() const { return 2.0 * (d + 2.0 * theta * theta); }
};

namespace internal {

// log I_{d/2-1}(z) including the d = 1 case, where the order is -1/2 and
// I_{-1/2}(z) = sqrt(2 / (pi z)) cosh z.
inline double log_bessel_i_half_dof(int d, double z) {
  if (d >= 2) return log_bessel_i(0.5 * d - 1.0, z);
  const double log_cosh = z + std::log1p(std::exp(-2.0 * z)) - std::numbers::ln2;
  return log_cosh + 0.5 * std::log(2.0 / (std::numbers::pi * z));
}

// I_{d/2}(z) / I_{d/2-1}(z), with tanh z for d = 1.
inline double bessel_quotient_half_dof(int d, double z) {
  if (d >= 2) return bessel_quotient(0.5 * d - 1.0, z);
  return std::tanh(z);
}

inline double central_chi2_log_pdf(double dof, double x) {
  return (0.5 * dof - 1.0) * std::log(x) - 0.5 * x -
         0.5 * dof * std::numbers::ln2 - std::lgamma(0.5 * dof);
}

}  // namespace internal

inline double ncx2_log_pdf(const NoncentralChiSq& dist, double x) {
  require(x > 0.0, "ncx2_log_pdf: requires x > 0");
  if (dist.theta == 0.0) return internal::central_chi2_log_pdf(dist.d, x);
  const double theta = dist.theta;
  const double z = theta * std::sqrt(x);
  // 1/2 e^{-(x+t^2)/2} (sqrt(x)/t)^{d/2-1} I_{d/2-1}(t sqrt(x))
  return -std::numbers::ln2 - 0.5 * (x + theta * theta) +
         (0.5 * dist.d - 1.0) * (0.5 * std::log(x) - std::log(theta)) +
         internal::log_bessel_i_half_dof(dist.d, z);
}

// Score d/dtheta log p_theta(x) = -theta + sqrt(x) R_{d/2-1}(theta sqrt(x)).
// At theta = 0 the score is identically zero (the theta -> 0 limit); the
// result is flagged rather than rejected so sweeps can touch the boundary.
struct ScoreValue {
  double value = 0.0;
  bool at_boundary = false;
};

inline ScoreValue ncx2_score(const NoncentralChiSq& dist, double x) {
  require(x > 0.0, "ncx2_score: requires x > 0");
  if (dist.theta == 0.0) return {0.0, true};
  const double root = std::sqrt(x);
  return {-dist.theta +
              root * internal::bessel_quotient_half_dof(dist.d, dist.theta * root),
          false};
}

// ||g + theta e_1||^2 with g standard normal in d dimensions.
inline double sample_ncx2(const NoncentralChiSq& dist, RngStream& rng) {
  const double first = rng.normal() + dist.theta;
  double total = first * first;
  for (int i = 1; i < dist.d; ++i) {
    const double g = rng.normal();
    total += g * g;
  }
  return total;
}

}  // namespace synthdp

#endif  // SYNTHDP_DISTRIBUTIONS_NCX2_HPP_

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

// Special functions: modified Bessel functions of the first kind (in log
// form), their quotients, the scalar confluent limit function 0F1, and the
// standard normal CDF / quantile.

#ifndef SYNTHDP_MATHKIT_SPECIAL_HPP_
#define SYNTHDP_MATHKIT_SPECIAL_HPP_

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "synthdp/mathkit/errors.hpp"

namespace synthdp {

namespace internal {

// Below this argument (or when x^2/4 is small next to nu+1) log I_nu is summed
// from its power series, whose terms are all positive.
constexpr double kBesselSeriesLimit = 30.0;

inline double log_bessel_i_series(double nu, double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 10000; ++k) {
    term *= q / (static_cast<double>(k) * (static_cast<double>(k) + nu));
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return nu * std::log(0.5 * x) - std::lgamma(nu + 1.0) + std::log(sum);
}

// Hankel expansion of log I_mu(x) for large x; mu is small (in [0, 1)).
inline double log_bessel_i_hankel(double mu, double x) {
  const double four_mu2 = 4.0 * mu * mu;
  double term = 1.0;
  double sum = 1.0;
  double previous = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(four_mu2 - odd * odd) / (8.0 * k * x);
    if (std::abs(term) > previous) break;  // asymptotic series turns around
    sum += term;
    previous = std::abs(term);
    if (previous < 1e-17 * std::abs(sum)) break;
  }
  return x - 0.5 * std::log(2.0 * std::numbers::pi * x) + std::log(sum);
}

// Backward recurrence for r_m = I_{m+1}(x) / I_m(x), m = nu_lo, nu_lo+1, ...
// Runs the Gautschi continued fraction from a tail index chosen so that the
// accumulated contraction of the starting error is below e^-40, and returns
// r for the `count` indices nu_lo .. nu_lo + count - 1.
inline std::vector<double> bessel_quotient_run(double nu_lo, double x,
                                               std::size_t count) {
  std::vector<double> out(count, 0.0);
  if (x == 0.0) return out;
  // Each backward step multiplies the starting error by about r_m^2.
  auto estimate = [x](double m) {
    const double a = m + 1.0;
    return x / (a + std::sqrt(a * a + x * x));
  };
  const double base = nu_lo + static_cast<double>(count);
  std::size_t extra = 0;
  double contraction = 0.0;
  while (contraction < 40.0) {
    contraction -= 2.0 * std::log(estimate(base + static_cast<double>(extra)));
    ++extra;
  }
  const double a = base + static_cast<double>(extra) + 0.5;
  double r = x / (a + std::sqrt(a * a + x * x));
  for (std::size_t i = extra; i-- > 0;) {
    const double m = base + static_cast<double>(i);
    r = x / (2.0 * (m + 1.0) + x * r);
  }
  for (std::size_t j = count; j-- > 0;) {
    const double m = nu_lo + static_cast<double>(j);
    r = x / (2.0 * (m + 1.0) + x * r);
    out[j] = r;
  }
  return out;
}

}  // namespace internal

// log I_nu(x) for nu >= 0, x >= 0. Never forms I_nu itself, so arguments in
// the millions are fine.
inline double log_bessel_i(double nu, double x) {
  require(std::isfinite(nu) && std::isfinite(x),
          "log_bessel_i: arguments must be finite");
  require(nu >= 0.0 && x >= 0.0, "log_bessel_i: requires nu >= 0 and x >= 0");
  if (x == 0.0) {
    return nu == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  if (x <= internal::kBesselSeriesLimit || x * x <= 80.0 * (nu + 1.0)) {
    return internal::log_bessel_i_series(nu, x);
  }
  const double steps = std::floor(nu);
  const double mu = nu - steps;
  double result = internal::log_bessel_i_hankel(mu, x);
  if (steps > 0.0) {
    const auto ratios = internal::bessel_quotient_run(
        mu, x, static_cast<std::size_t>(steps));
    for (double r : ratios) result += std::log(r);
  }
  return result;
}

// R_nu(x) = I_{nu+1}(x) / I_nu(x), in [0, 1).
inline double bessel_quotient(double nu, double x) {
  require(std::isfinite(nu) && std::isfinite(x),
          "bessel_quotient: arguments must be finite");
  require(nu >= 0.0 && x >= 0.0, "bessel_quotient: requires nu >= 0, x >= 0");
  return internal::bessel_quotient_run(nu, x, 1)[0];
}

// log 0F1(; b; x) for b > 0, x >= 0. For b >= 1 this goes through
//   0F1(; b; x) = Gamma(b) x^{(1-b)/2} I_{b-1}(2 sqrt(x)),
// and for b < 1 through the contiguous relation
//   0F1(; b; x) = 0F1(; b+1; x) + x / (b (b+1)) 0F1(; b+2; x).
inline double scalar_0f1(double b, double x) {
  require(std::isfinite(b) && std::isfinite(x),
          "scalar_0f1: arguments must be finite");
  require(b > 0.0, "scalar_0f1: requires b > 0");
  require(x >= 0.0, "scalar_0f1: requires x >= 0");
  if (x == 0.0) return 0.0;
  if (b >= 1.0) {
    return std::lgamma(b) + 0.5 * (1.0 - b) * std::log(x) +
           log_bessel_i(b - 1.0, 2.0 * std::sqrt(x));
  }
  const double first = scalar_0f1(b + 1.0, x);
  const double second = std::log(x / (b * (b + 1.0))) + scalar_0f1(b + 2.0, x);
  const double hi = std::max(first, second);
  return hi + std::log(std::exp(first - hi) + std::exp(second - hi));
}

inline double std_normal_cdf(double z) {
  return 0.5 * std::erfc(-z * std::numbers::sqrt2 * 0.5);
}

inline double std_normal_log_pdf(double z) {
  return -0.5 * z * z - 0.5 * std::log(2.0 * std::numbers::pi);
}

inline double std_normal_pdf(double z) { return std::exp(std_normal_log_pdf(z)); }

// Inverse of std_normal_cdf: Wichura's AS241 (PPND16) followed by one Newton
// step on the CDF.
inline double std_normal_quantile(double p) {
  require(p > 0.0 && p < 1.0, "std_normal_quantile: requires 0 < p < 1");
  const double q = p - 0.5;
  double z;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    z = q *
        (((((((2509.0809287301226727 * r + 33430.575583588128105) * r +
              67265.770927008700853) * r + 45921.953931549871457) * r +
            13731.693765509461125) * r + 1971.5909503065514427) * r +
          133.14166789178437745) * r + 3.387132872796366608) /
        (((((((5226.495278852545925 * r + 28729.085735721942674) * r +
              39307.89580009271061) * r + 21213.794301586595867) * r +
            5394.1960214247511077) * r + 687.1870074920579083) * r +
          42.313330701600911252) * r + 1.0);
  } else {
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    if (r <= 5.0) {
      r -= 1.6;
      z = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r +
                0.24178072517745061177) * r + 1.27045825245236838258) * r +
              3.64784832476320460504) * r + 5.7694972214606914055) * r +
            4.6303378461565452959) * r + 1.42343711074968357734) /
          (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r +
                0.0151986665636164571966) * r + 0.14810397642748007459) * r +
              0.68976733498510000455) * r + 1.6763848301838038494) * r +
            2.05319162663775882187) * r + 1.0);
    } else {
      r -= 5.0;
      z = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                0.0012426609473880784386) * r + 0.026532189526576123093) * r +
              0.29656057182850489123) * r + 1.7848265399172913358) * r +
            5.4637849111641143699) * r + 6.6579046435011037772) /
          (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r +
                1.8463183175100546818e-5) * r + 7.868691311456132591e-4) * r +
              0.0148753612908506148525) * r + 0.13692988092273580531) * r +
            0.59983220655588793769) * r + 1.0);
    }
    if (q < 0.0) z = -z;
  }
  // One Newton refinement; skipped deep in the tails where the density
  // underflows.
  const double density = std_normal_pdf(z);
  if (density > 1e-300) {
    const double err = q <= 0.0 ? std_normal_cdf(z) - p
                                : (1.0 - p) - std_normal_cdf(-z);
    z -= (q <= 0.0 ? err : -err) / density;
  }
  return z;
}

}  // namespace synthdp

#endif  // SYNTHDP_MATHKIT_SPECIAL_HPP_

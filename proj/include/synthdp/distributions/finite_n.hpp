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

// Exact density of the k = 1 release statistic S = ||Z V||^2 for finite n_syn.
//
// For k = 1 the conditional law of Z V given V is N(0, ||V||^2 I_n), so the
// release depends on the data only through S = Y X with Y = ||V||^2 ~
// chi^2_d(theta^2) and X ~ chi^2_n independent. This factorisation holds for
// every n_syn >= 1, not only n_syn >= d. The density is the product mixture
//   f_S(s) = int p_Y(y) f_n(s / y) / y dy,
// evaluated in log space over u = log y.

#ifndef SYNTHDP_DISTRIBUTIONS_FINITE_N_HPP_
#define SYNTHDP_DISTRIBUTIONS_FINITE_N_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "synthdp/distributions/ncx2.hpp"
#include "synthdp/mathkit/errors.hpp"
#include "synthdp/mathkit/peaked.hpp"

namespace synthdp {

namespace internal {

// Grid step in log-space for a chi^2_d(theta^2) factor.
inline double ncx2_log_scale(const NoncentralChiSq& dist) {
  return std::clamp(std::sqrt(dist.variance()) / dist.mean(), 1e-4, 1.0);
}

}  // namespace internal

inline double finite_n_log_pdf_k1(int d, std::int64_t n_syn, double theta, double s,
                                  double tol = 1e-8) {
  require(d >= 1 && n_syn >= 1, "finite_n_pdf_k1: requires d, n_syn >= 1");
  require(s > 0.0, "finite_n_pdf_k1: requires s > 0");
  const NoncentralChiSq gram(d, theta);
  const double n = static_cast<double>(n_syn);
  auto log_integrand = [&](double u) {
    const double y = std::exp(u);
    const double x = s / y;
    if (!(y > 0.0) || !std::isfinite(y) || !(x > 0.0) || !std::isfinite(x)) {
      return -std::numeric_limits<double>::infinity();
    }
    return ncx2_log_pdf(gram, y) + internal::central_chi2_log_pdf(n, x);
  };
  const double step =
      0.5 * std::min(internal::ncx2_log_scale(gram), std::sqrt(2.0 / n));
  const double start = std::log(s / std::max(n, 1.0));
  const auto window = find_log_window(log_integrand, start, std::min(step, 0.5));
  const auto integral = integrate_window(
      [&](double u) { return std::exp(log_integrand(u) - window.peak_log); },
      window, tol);
  return window.peak_log + std::log(integral.value);
}

inline double finite_n_pdf_k1(int d, std::int64_t n_syn, double theta, double s,
                              double tol = 1e-8) {
  return std::exp(finite_n_log_pdf_k1(d, n_syn, theta, s, tol));
}

}  // namespace synthdp

#endif  // SYNTHDP_DISTRIBUTIONS_FINITE_N_HPP_

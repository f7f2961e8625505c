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

// Renyi divergences between one-dimensional densities on (0, inf) by
// quadrature in u = log x, with the non-central chi^2 plateau and the exact
// finite-n divergence for k = 1 as instances.
//
// With L = log p - log q, the integrand used is
//   q (e^{alpha L} - 1 - alpha (e^L - 1)) >= 0,
// which integrates to E_q[(p/q)^alpha] - 1 without cancellation near p = q.

#ifndef SYNTHDP_ESTIMATORS_RENYI_HPP_
#define SYNTHDP_ESTIMATORS_RENYI_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "synthdp/distributions/finite_n.hpp"
#include "synthdp/distributions/ncx2.hpp"
#include "synthdp/estimators/fisher.hpp"
#include "synthdp/mathkit/errors.hpp"
#include "synthdp/mathkit/peaked.hpp"

namespace synthdp {

namespace internal {

// log(e^{alpha L} - 1 - alpha (e^L - 1)); -inf at L = 0.
inline double log_renyi_excess(double alpha, double l) {
  if (std::abs(alpha * l) < 0.1) {
    // sum_{n>=2} (alpha^n - alpha) L^n / n!
    double power = alpha * alpha, lpow = l * l, fact = 2.0, sum = 0.0;
    for (int n = 2; n < 20; ++n) {
      sum += (power - alpha) * lpow / fact;
      power *= alpha;
      lpow *= l;
      fact *= n + 1;
    }
    return sum > 0.0 ? std::log(sum) : -std::numeric_limits<double>::infinity();
  }
  if (l > 1.0) {
    const double rest =
        alpha * std::exp((1.0 - alpha) * l) - (alpha - 1.0) * std::exp(-alpha * l);
    return alpha * l + std::log1p(-rest);
  }
  return std::log(std::expm1(alpha * l) - alpha * std::expm1(l));
}

// log(1 + e^x).
inline double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

}  // namespace internal

// D_alpha(P || Q) for densities on (0, inf) given as log-densities in x.
// `start` and `step` seed the log-space window search; the window covers the
// bulk of p, q and the tilted density p^alpha q^{1-alpha}. A tilted integrand
// that does not decay raises NumericalFailure.
template <typename LogP, typename LogQ>
double renyi_positive_line(double alpha, LogP&& log_p, LogQ&& log_q, double start,
                           double step, double tol) {
  require(alpha > 1.0, "renyi: alpha must be > 1");
  auto lp = [&](double u) { return log_p(std::exp(u)) + u; };
  auto lq = [&](double u) { return log_q(std::exp(u)) + u; };
  auto tilted = [&](double u) { return alpha * lp(u) + (1.0 - alpha) * lq(u); };
  LogWindow window = merge_windows(find_log_window(lp, start, step),
                                   find_log_window(lq, start, step));
  try {
    window = merge_windows(window, find_log_window(tilted, start, step));
  } catch (const NumericalFailure& e) {
    throw NumericalFailure(
        "renyi: p^alpha q^(1-alpha) does not decay; the divergence is infinite or alpha "
        "is too large for the tails");
  }
  auto log_integrand = [&](double u) {
    const double a = lp(u), b = lq(u);
    if (!std::isfinite(a) || !std::isfinite(b)) {
      if (a == -std::numeric_limits<double>::infinity()) {
        return b + std::log(alpha - 1.0);  // q (alpha - 1) where p vanishes
      }
      return std::isfinite(a) ? std::numeric_limits<double>::infinity()
                              : -std::numeric_limits<double>::infinity();
    }
    return b + internal::log_renyi_excess(alpha, a - b);
  };
  // Scale by a probe of the integrand so the pieces stay in range.
  double shift = -std::numeric_limits<double>::infinity();
  const int probes = 400;
  for (int i = 0; i <= probes; ++i) {
    shift = std::max(shift, log_integrand(window.lo + (window.hi - window.lo) * i / probes));
  }
  if (!std::isfinite(shift)) return 0.0;
  const auto result = integrate_window(
      [&](double u) { return std::exp(log_integrand(u) - shift); }, window, tol);
  if (!(result.value > 0.0)) return 0.0;
  return internal::softplus(shift + std::log(result.value)) / (alpha - 1.0);
}

// Plateau D_alpha(chi^2_d(theta_v^2) || chi^2_d(theta_w^2)).
inline double renyi_ncx2_quadrature(double alpha, int d, double theta_v, double theta_w,
                                    double tol = 1e-10) {
  require(alpha > 1.0, "renyi_ncx2_quadrature: alpha must be > 1");
  const NoncentralChiSq p(d, theta_v), q(d, theta_w);
  if (theta_v == theta_w) return 0.0;
  const double step = std::min(
      0.5, 0.5 * std::min(internal::ncx2_log_scale(p), internal::ncx2_log_scale(q)));
  return renyi_positive_line(
      alpha, [&](double x) { return ncx2_log_pdf(p, x); },
      [&](double x) { return ncx2_log_pdf(q, x); }, std::log(q.mean()), step, tol);
}

// Exact D_alpha(ZV || ZW) for k = 1 through the law of ||ZV||^2. Given V,
// ZV is N(0, ||V||^2 I_{n}), so ||ZV||^2 is sufficient for every n_syn >= 1.
inline double renyi_finite_n_k1(double alpha, int d, std::int64_t n_syn, double theta_v,
                                double theta_w, double tol = 1e-6,
                                double inner_tol = 1e-8) {
  require(alpha > 1.0, "renyi_finite_n_k1: alpha must be > 1");
  require(d >= 1 && n_syn >= 1, "renyi_finite_n_k1: requires d, n_syn >= 1");
  if (theta_v == theta_w) return 0.0;
  const NoncentralChiSq p(d, theta_v), q(d, theta_w);
  const double n = static_cast<double>(n_syn);
  auto width = [&](const NoncentralChiSq& g) {
    const double s = internal::ncx2_log_scale(g);
    return std::sqrt(s * s + 2.0 / n);
  };
  const double step = std::min(0.5, 0.5 * std::min(width(p), width(q)));
  return renyi_positive_line(
      alpha, [&](double s) { return finite_n_log_pdf_k1(d, n_syn, theta_v, s, inner_tol); },
      [&](double s) { return finite_n_log_pdf_k1(d, n_syn, theta_w, s, inner_tol); },
      std::log(n * q.mean()), step, tol);
}

// Plain Monte Carlo plateau: log mean (p/q)^alpha over draws from q, divided
// by alpha - 1. The standard error comes from the delta method and is only
// meaningful while (p/q)^alpha has a finite variance under q.
inline McEstimate renyi_mc_ncx2(double alpha, int d, double theta_v, double theta_w,
                                std::int64_t n_samples, RngStream& rng) {
  require(alpha > 1.0, "renyi_mc_ncx2: alpha must be > 1");
  require(n_samples >= 2, "renyi_mc_ncx2: requires n_samples >= 2");
  const NoncentralChiSq p(d, theta_v), q(d, theta_w);
  std::vector<double> tilted(static_cast<std::size_t>(n_samples));
  double top = -std::numeric_limits<double>::infinity();
  for (auto& t : tilted) {
    const double x = sample_ncx2(q, rng);
    t = alpha * (ncx2_log_pdf(p, x) - ncx2_log_pdf(q, x));
    top = std::max(top, t);
  }
  internal::RunningMoments moments;
  for (double t : tilted) moments.add(std::exp(t - top));
  const McEstimate scaled = moments.estimate();
  if (!(scaled.estimate > 0.0)) throw NumericalFailure("renyi_mc_ncx2: degenerate sample");
  return {(top + std::log(scaled.estimate)) / (alpha - 1.0),
          scaled.stderr_ / scaled.estimate / (alpha - 1.0)};
}

}  // namespace synthdp

#endif  // SYNTHDP_ESTIMATORS_RENYI_HPP_

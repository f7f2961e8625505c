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

// Globally adaptive Gauss-Kronrod (7/15) quadrature and bracketing root
// search.
//
// The integrator keeps a max-heap of subintervals keyed by error estimate and
// bisects the worst one until the summed error meets the tolerance or the
// subdivision budget runs out. Semi-infinite ranges go through the rational
// substitution x = split + scale * t / (1 - t), t in [0, 1).

#ifndef SYNTHDP_MATHKIT_QUADRATURE_HPP_
#define SYNTHDP_MATHKIT_QUADRATURE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <sstream>
#include <vector>

#include "synthdp/mathkit/errors.hpp"

namespace synthdp {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  std::size_t max_subdivisions = 4000;
};

// Location/scale hint for integrands on [a, inf): the finite piece is
// [a, split], the tail is mapped with width `scale`.
struct TailHint {
  double split;
  double scale = 1.0;
};

// Thrown when the subdivision budget is exhausted; partial() is the estimate.
class QuadratureFailure : public NumericalFailure {
 public:
  QuadratureFailure(const std::string& what, QuadratureResult partial)
      : NumericalFailure(what, partial.value), result_(partial) {}
  const QuadratureResult& result() const noexcept { return result_; }

 private:
  QuadratureResult result_;
};

namespace internal {

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
Segment gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    kronrod += kKronrodWeights[j] * (f1[j] + f2[j]);
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1[j] + f2[j]);
  }
  // QUADPACK error heuristic.
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    asc += kKronrodWeights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  asc *= std::abs(half);
  double error = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && error != 0.0) {
    error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
  }
  return {a, b, kronrod * half, error};
}

}  // namespace internal

// Integral of f over [a, b] (a < b, both finite).
template <typename F>
QuadratureResult adaptive_quadrature(F&& f, double a, double b,
                                     const QuadratureOptions& options) {
  require(std::isfinite(a) && std::isfinite(b) && a < b,
          "adaptive_quadrature: requires finite a < b");
  require(options.abs_tol > 0.0 || options.rel_tol > 0.0,
          "adaptive_quadrature: tolerance must be positive");
  std::size_t evaluations = 0;
  auto counted = [&](double x) {
    ++evaluations;
    const double y = f(x);
    if (!std::isfinite(y)) {
      std::ostringstream msg;
      msg << "adaptive_quadrature: integrand not finite at x = " << x;
      throw NumericalFailure(msg.str());
    }
    return y;
  };
  std::priority_queue<internal::Segment> heap;
  auto first = internal::gauss_kronrod_15(counted, a, b);
  double total = first.value;
  double error = first.error;
  heap.push(first);
  std::size_t subdivisions = 0;
  auto tolerance = [&] {
    return std::max(options.abs_tol, options.rel_tol * std::abs(total));
  };
  while (error > tolerance()) {
    if (subdivisions >= options.max_subdivisions) {
      std::ostringstream msg;
      msg << "adaptive_quadrature: no convergence on [" << a << ", " << b
          << "] after " << subdivisions << " subdivisions (estimate " << total
          << ", error " << error << ")";
      throw QuadratureFailure(msg.str(), {total, error, evaluations});
    }
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Interval cannot be split further in floating point; accept it.
      heap.push({worst.a, worst.b, worst.value, 0.0});
      error -= worst.error;
      continue;
    }
    const auto left = internal::gauss_kronrod_15(counted, worst.a, mid);
    const auto right = internal::gauss_kronrod_15(counted, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
  }
  // Re-sum to shed accumulated update rounding; keeps results order-stable.
  std::vector<internal::Segment> segments;
  segments.reserve(heap.size());
  while (!heap.empty()) {
    segments.push_back(heap.top());
    heap.pop();
  }
  std::sort(segments.begin(), segments.end(),
            [](const auto& l, const auto& r) { return l.a < r.a; });
  double value = 0.0, err = 0.0;
  for (const auto& s : segments) {
    value += s.value;
    err += s.error;
  }
  return {value, err, evaluations};
}

template <typename F>
QuadratureResult adaptive_quadrature(F&& f, double a, double b, double tol) {
  QuadratureOptions options;
  options.abs_tol = tol;
  return adaptive_quadrature(std::forward<F>(f), a, b, options);
}

// Integral of f over [a, inf). Without a hint the substitution is anchored at
// a with unit scale.
template <typename F>
QuadratureResult integrate_to_infinity(F&& f, double a,
                                       const QuadratureOptions& options,
                                       std::optional<TailHint> hint = {}) {
  require(std::isfinite(a), "integrate_to_infinity: lower limit must be finite");
  double split = a;
  double scale = 1.0;
  if (hint) {
    split = std::max(a, hint->split);
    scale = hint->scale;
    require(scale > 0.0, "integrate_to_infinity: scale must be positive");
  }
  QuadratureResult head{};
  QuadratureOptions part = options;
  if (split > a) {
    part.abs_tol = options.abs_tol * 0.5;
    head = adaptive_quadrature(f, a, split, part);
  }
  auto mapped = [&](double t) {
    const double u = 1.0 - t;
    const double x = split + scale * t / u;
    if (!std::isfinite(x)) return 0.0;
    const double y = f(x);
    return y == 0.0 ? 0.0 : y * scale / (u * u);
  };
  const auto tail = adaptive_quadrature(mapped, 0.0, 1.0, part);
  return {head.value + tail.value, head.abs_error_estimate + tail.abs_error_estimate,
          head.evaluations + tail.evaluations};
}

template <typename F>
QuadratureResult integrate_to_infinity(F&& f, double a, double tol,
                                       std::optional<TailHint> hint = {}) {
  QuadratureOptions options;
  options.abs_tol = tol;
  return integrate_to_infinity(std::forward<F>(f), a, options, hint);
}

// Root of f in [lo, hi] by bisection; requires a sign change (or a zero at an
// endpoint). Stops when the bracket is narrower than tol.
template <typename F>
double bisect(F&& f, double lo, double hi, double tol) {
  require(lo < hi, "bisect: requires lo < hi");
  require(tol > 0.0, "bisect: tolerance must be positive");
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) {
    std::ostringstream msg;
    msg << "bisect: no sign change on [" << lo << ", " << hi << "]";
    throw DomainError(msg.str());
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if (std::signbit(fmid) == std::signbit(flo)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace synthdp

#endif  // SYNTHDP_MATHKIT_QUADRATURE_HPP_

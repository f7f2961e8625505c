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

// Helpers for integrands that are sharply peaked somewhere on the real line
// and known only through their logarithm. The window search walks outward
// from a starting point on a fixed grid until the log-integrand has dropped a
// fixed amount below the running maximum on both sides; integration then
// proceeds piecewise over that window so no sub-range is narrower-peaked than
// the grid step.

#ifndef SYNTHDP_MATHKIT_PEAKED_HPP_
#define SYNTHDP_MATHKIT_PEAKED_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "synthdp/mathkit/errors.hpp"
#include "synthdp/mathkit/quadrature.hpp"

namespace synthdp {

struct LogWindow {
  double lo = 0.0;
  double hi = 0.0;
  double peak_log = -std::numeric_limits<double>::infinity();
  double step = 1.0;
};

// `drop` is in nats; 75 leaves out mass below e^-75 of the peak per grid step.
template <typename LogF>
LogWindow find_log_window(LogF&& log_f, double start, double step,
                          double drop = 75.0, int max_steps = 20000) {
  require(step > 0.0, "find_log_window: step must be positive");
  auto eval = [&](double u) {
    const double y = log_f(u);
    return std::isnan(y) ? -std::numeric_limits<double>::infinity() : y;
  };
  double best = eval(start);
  auto walk = [&](double direction) {
    double u = start;
    for (int i = 0; i < max_steps; ++i) {
      u += direction * step;
      const double y = eval(u);
      best = std::max(best, y);
      if (std::isfinite(best) && y < best - drop) return u;
    }
    std::ostringstream msg;
    msg << "find_log_window: log-integrand does not decay within " << max_steps
        << " steps of " << start << " (divergent integral?)";
    throw NumericalFailure(msg.str(), best);
  };
  LogWindow window;
  window.hi = walk(+1.0);
  window.lo = walk(-1.0);
  window.peak_log = best;
  window.step = step;
  if (!std::isfinite(best)) {
    throw NumericalFailure("find_log_window: log-integrand is -inf everywhere scanned");
  }
  return window;
}

// Smallest window covering both; the finer grid step is kept.
inline LogWindow merge_windows(const LogWindow& a, const LogWindow& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi), std::max(a.peak_log, b.peak_log),
          std::min(a.step, b.step)};
}

// Integral of f over the window, split into pieces of `steps_per_piece` grid
// steps. The relative tolerance applies to the total.
template <typename F>
QuadratureResult integrate_window(F&& f, const LogWindow& window, double rel_tol,
                                  double abs_tol = 0.0, int steps_per_piece = 4) {
  const double width = window.hi - window.lo;
  const int pieces = std::max(
      1, static_cast<int>(std::ceil(width / (steps_per_piece * window.step))));
  QuadratureOptions options;
  options.rel_tol = rel_tol;
  QuadratureResult total;
  // First pass for scale so that each piece can get an absolute budget.
  std::vector<QuadratureResult> parts(pieces);
  double magnitude = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double a = window.lo + width * i / pieces;
    const double b = (i + 1 == pieces) ? window.hi : window.lo + width * (i + 1) / pieces;
    QuadratureOptions coarse;
    coarse.abs_tol = std::numeric_limits<double>::max();
    parts[i] = adaptive_quadrature(f, a, b, coarse);
    magnitude += std::abs(parts[i].value);
  }
  options.abs_tol = std::max({abs_tol / pieces, rel_tol * magnitude / pieces,
                              std::numeric_limits<double>::min()});
  options.rel_tol = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double a = window.lo + width * i / pieces;
    const double b = (i + 1 == pieces) ? window.hi : window.lo + width * (i + 1) / pieces;
    if (parts[i].abs_error_estimate <= options.abs_tol) {
      total.value += parts[i].value;
      total.abs_error_estimate += parts[i].abs_error_estimate;
      total.evaluations += parts[i].evaluations;
      continue;
    }
    const auto part = adaptive_quadrature(f, a, b, options);
    total.value += part.value;
    total.abs_error_estimate += part.abs_error_estimate;
    total.evaluations += part.evaluations + parts[i].evaluations;
  }
  return total;
}

}  // namespace synthdp

#endif  // SYNTHDP_MATHKIT_PEAKED_HPP_

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

// Closed-form Renyi-DP accounting for synthetic data released by a linear
// generator with unit Gaussian noise.
//
// Every bound here is an upper bound on D_alpha(ZV, ZW) valid for all n_syn:
// the release is a randomised function of the Gram statistic V^T V, whose
// divergence dominates the finite-n one, and of V itself (post-processing).

#ifndef SYNTHDP_ACCOUNTANT_BOUNDS_HPP_
#define SYNTHDP_ACCOUNTANT_BOUNDS_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "synthdp/distributions/generator.hpp"
#include "synthdp/mathkit/errors.hpp"
#include "synthdp/mathkit/quadrature.hpp"

namespace synthdp {

// D_alpha(N(v, I), N(w, I)) = alpha Delta^2 / 2.
inline double rdp_gaussian(double alpha, double delta_sens) {
  require(alpha > 1.0, "rdp_gaussian: alpha must be > 1");
  require(delta_sens >= 0.0, "rdp_gaussian: delta must be >= 0");
  return 0.5 * alpha * delta_sens * delta_sens;
}

// Bounds on the Fisher information I(d, theta) of chi^2_d(theta^2) with
// respect to the amplitude theta.
struct FisherBounds {
  double lower = 0.0;        // 2t^2 / (2t^2 + d)
  double upper = 0.0;        // min(1, 2t^2 / (2t^2 + d - 3))
  double upper_sharp = 0.0;  // root of the quadratic inequality behind `upper`
  double upper_alt = 0.0;    // Poincare-inequality bound; tends to 2 as theta grows

  double tightest_upper() const { return std::min({upper, upper_sharp, upper_alt}); }
};

inline FisherBounds fisher_bounds_ncx2(int d, double theta) {
  require(d >= 3, "fisher_bounds_ncx2: requires integer d >= 3");
  require(std::isfinite(theta) && theta >= 0.0, "fisher_bounds_ncx2: theta must be >= 0");
  const double t2 = theta * theta;
  const double dd = static_cast<double>(d);
  FisherBounds b;
  if (t2 == 0.0) return b;
  b.lower = 2.0 * t2 / (2.0 * t2 + dd);
  // d = 3 makes the denominator 2t^2; the clamp keeps I <= 1.
  b.upper = std::min(1.0, 2.0 * t2 / (2.0 * t2 + (dd - 3.0)));
  const double shifted = t2 + 0.5 * (dd - 3.0);
  // Positive root of I^2 + b I - t^2 <= 0 with b = t^2 + (d - 3)/2.
  b.upper_sharp = 2.0 * t2 / (shifted + std::sqrt(shifted * shifted + 4.0 * t2));
  const double poly = t2 * (t2 + 2.0 * dd);
  b.upper_alt = 2.0 * poly / (2.0 * dd * dd + poly);
  return b;
}

// Amplification band of the high-privacy regime: for small Delta,
//   eta_lo + o(1) <= D_alpha(V^T V, W^T W) / (alpha Delta^2 / 2) <= eta_hi + o(1).
struct AmplificationBand {
  double eta_lo = 0.0;
  double eta_hi = 1.0;
};

inline AmplificationBand local_band_k1(double alpha, int d, double norm_w, double C) {
  require(alpha > 1.0, "local_band_k1: alpha must be > 1");
  require(d >= 3, "local_band_k1: requires integer d >= 3");
  require(C > 0.0 && norm_w >= 0.0 && norm_w <= C,
          "local_band_k1: requires 0 <= ||w|| <= C");
  const double w2 = norm_w * norm_w;
  const double c2 = C * C;
  return {2.0 * w2 / (2.0 * w2 + d), 2.0 * c2 / (2.0 * c2 + d - 3.0)};
}

// (1 / (alpha - 1)) log f(alpha, C, d, Delta) with
//   f = 1 + alpha sqrt(2C^2 / (2C^2 + d - 3))
//         (e^{(alpha-1)(2alpha-1) Delta^2 / 2} - 1) / ((alpha-1)(2alpha-1) Delta).
// Delta = 0 returns the removable-singularity limit 0.
inline double global_bound_k1(double alpha, double C, int d, double delta_sens) {
  require(alpha > 1.0, "global_bound_k1: alpha must be > 1");
  require(C > 0.0, "global_bound_k1: C must be > 0");
  require(d >= 3, "global_bound_k1: requires integer d >= 3");
  require(delta_sens >= 0.0, "global_bound_k1: delta must be >= 0");
  if (delta_sens == 0.0) return 0.0;
  const double c2 = C * C;
  const double eta = 2.0 * c2 / (2.0 * c2 + d - 3.0);
  const double rate = (alpha - 1.0) * (2.0 * alpha - 1.0);
  const double growth = std::expm1(0.5 * rate * delta_sens * delta_sens) / (rate * delta_sens);
  return std::log1p(alpha * std::sqrt(eta) * growth) / (alpha - 1.0);
}

inline double global_bound_multik(double alpha, double C, int d, int k,
                                  double delta_sens) {
  require(k >= 1 && d >= k, "global_bound_multik: requires d >= k >= 1");
  const int blocks = d / k;
  require(blocks >= 3, "global_bound_multik: requires floor(d / k) >= 3");
  return global_bound_k1(alpha, C, blocks, delta_sens);
}

// Generic Fisher-information criterion: given an envelope U(z, theta) >=
// D_{2 alpha - 1}(P_z, P_theta) along [theta, theta'] and sup I <= fisher_sup,
//   D_alpha(P_theta', P_theta) <= log(1 + alpha sqrt(fisher_sup) int e^{(alpha-1)U}) / (alpha-1).
using Envelope = std::function<double(double z, double theta)>;

inline double criterion_bound(double alpha, double fisher_sup, const Envelope& envelope,
                              double theta, double theta_prime, double tol = 1e-12) {
  require(alpha > 1.0, "criterion_bound: alpha must be > 1");
  require(fisher_sup >= 0.0, "criterion_bound: fisher_sup must be >= 0");
  require(theta < theta_prime, "criterion_bound: requires theta < theta'");
  if (fisher_sup == 0.0) return 0.0;
  QuadratureOptions options;
  options.abs_tol = tol;
  options.rel_tol = tol;
  const auto path = adaptive_quadrature(
      [&](double z) { return std::exp((alpha - 1.0) * envelope(z, theta)); }, theta,
      theta_prime, options);
  return std::log1p(alpha * std::sqrt(fisher_sup) * path.value) / (alpha - 1.0);
}

// Envelope of the Gaussian location family: D_{2a-1}(N(z,1), N(t,1)) = (2a-1)(z-t)^2/2.
inline Envelope gaussian_envelope(double alpha) {
  return [alpha](double z, double theta) {
    return 0.5 * (2.0 * alpha - 1.0) * (z - theta) * (z - theta);
  };
}

// Criterion for the Gaussian family (I = 1) with the path integral replaced
// by its elementary upper bound int_0^D e^{c z^2} dz <= (e^{c D^2} - 1) / (c D).
inline double gaussian_criterion_closed_form(double alpha, double delta_sens) {
  require(alpha > 1.0, "gaussian_criterion_closed_form: alpha must be > 1");
  if (delta_sens == 0.0) return 0.0;
  const double rate = (alpha - 1.0) * (2.0 * alpha - 1.0);
  const double integral =
      2.0 * std::expm1(0.5 * rate * delta_sens * delta_sens) / (rate * delta_sens);
  return std::log1p(alpha * integral) / (alpha - 1.0);
}

enum class BoundMethod {
  kPostProcessing,
  kLocalBand,
  kGlobalK1,
  kGlobalMultiK,
  kCriterion,
  kPriorWork,
  kMinimum
};

enum class Regime { kAmplified, kNotAmplified, kBoundary };

inline std::string_view to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::kPostProcessing: return "post_processing";
    case BoundMethod::kLocalBand: return "local_band";
    case BoundMethod::kGlobalK1: return "global_k1";
    case BoundMethod::kGlobalMultiK: return "global_multik";
    case BoundMethod::kCriterion: return "criterion";
    case BoundMethod::kPriorWork: return "prior_work";
    case BoundMethod::kMinimum: return "minimum";
  }
  return "unknown";
}

inline std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::kAmplified: return "amplified";
    case Regime::kNotAmplified: return "not_amplified";
    case Regime::kBoundary: return "boundary";
  }
  return "unknown";
}

struct BoundReport {
  double value = 0.0;  // nats, at Renyi order inputs.alpha
  BoundMethod method = BoundMethod::kPostProcessing;
  Regime regime = Regime::kBoundary;
  PrivacyParams inputs;
  std::string notes;
  std::vector<BoundReport> constituents;  // populated for kMinimum

  // value / (alpha Delta^2 / 2); 1 when the baseline is zero.
  double amplification_factor() const {
    const double base = rdp_gaussian(inputs.alpha, inputs.delta_sens);
    return base > 0.0 ? value / base : 1.0;
  }
};

namespace internal {

inline Regime classify(double value, double baseline) {
  if (baseline == 0.0 || value == baseline) return Regime::kBoundary;
  return value < baseline ? Regime::kAmplified : Regime::kNotAmplified;
}

}  // namespace internal

inline BoundReport post_processing_report(const PrivacyParams& params) {
  params.validate();
  BoundReport r;
  r.value = rdp_gaussian(params.alpha, params.delta_sens);
  r.method = BoundMethod::kPostProcessing;
  r.regime = params.delta_sens == 0.0 ? Regime::kBoundary : Regime::kNotAmplified;
  r.inputs = params;
  r.notes = "releasing the perturbed parameters themselves";
  return r;
}

inline BoundReport global_report(const PrivacyParams& params) {
  params.validate();
  BoundReport r;
  r.value = global_bound_multik(params.alpha, params.C, params.d, params.k,
                                params.delta_sens);
  r.method = params.k == 1 ? BoundMethod::kGlobalK1 : BoundMethod::kGlobalMultiK;
  r.regime = internal::classify(r.value, rdp_gaussian(params.alpha, params.delta_sens));
  r.inputs = params;
  std::ostringstream notes;
  notes << "Fisher criterion with effective width floor(d/k) = " << params.d / params.k;
  r.notes = notes.str();
  return r;
}

// Asymptotic (small-Delta) estimate eta_hi * alpha Delta^2 / 2, k = 1 only. Not
// a certified bound: the band carries an o(1) term in Delta.
inline BoundReport local_band_report(const PrivacyParams& params, double norm_w) {
  params.validate();
  require(params.k == 1, "local_band_report: requires k = 1");
  const auto band = local_band_k1(params.alpha, params.d, norm_w, params.C);
  const double base = rdp_gaussian(params.alpha, params.delta_sens);
  BoundReport r;
  r.value = band.eta_hi * base;
  r.method = BoundMethod::kLocalBand;
  r.regime = internal::classify(r.value, base);
  r.inputs = params;
  std::ostringstream notes;
  notes << "asymptotic in Delta; eta_lo=" << band.eta_lo << " eta_hi=" << band.eta_hi;
  r.notes = notes.str();
  return r;
}

// Minimum of the post-processing and the global Fisher bound. Both are upper
// bounds on D_alpha(ZV, ZW) for every n_syn, so their minimum is as well.
inline BoundReport account(const PrivacyParams& params) {
  params.validate();
  BoundReport post = post_processing_report(params);
  BoundReport global = global_report(params);
  BoundReport r;
  r.method = BoundMethod::kMinimum;
  r.inputs = params;
  r.value = std::min(post.value, global.value);
  r.regime = internal::classify(global.value, post.value);
  r.notes = "minimum over valid upper bounds (post-processing, global Fisher)";
  r.constituents = {std::move(post), std::move(global)};
  return r;
}

}  // namespace synthdp

#endif  // SYNTHDP_ACCOUNTANT_BOUNDS_HPP_

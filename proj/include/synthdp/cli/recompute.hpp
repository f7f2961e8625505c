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

// Recomputes a result row from its own fields; the basis of `verify`.

#ifndef SYNTHDP_CLI_RECOMPUTE_HPP_
#define SYNTHDP_CLI_RECOMPUTE_HPP_

#include <optional>
#include <string>

#include "synthdp/accountant/bounds.hpp"
#include "synthdp/accountant/prior_work.hpp"
#include "synthdp/cli/csv.hpp"
#include "synthdp/estimators/experiments.hpp"
#include "synthdp/estimators/renyi.hpp"

namespace synthdp::cli {

inline TrainConfig train_config_from_notes(const std::map<std::string, std::string>& notes,
                                           double alpha, std::uint64_t seed) {
  auto get = [&](const char* key) -> const std::string& {
    const auto it = notes.find(key);
    if (it == notes.end()) throw UsageError(std::string("verify: notes lack '") + key + "'");
    return it->second;
  };
  TrainConfig cfg;
  cfg.steps = parse_integer<int>(get("steps"));
  cfg.batch = parse_integer<int>(get("batch"));
  cfg.lr = parse_number(get("lr"));
  cfg.hidden = parse_integer<int>(get("hidden"));
  cfg.eval_every = parse_integer<int>(get("eval_every"));
  cfg.patience = parse_integer<int>(get("patience"));
  cfg.n_eval = parse_integer<int>(get("n_eval"));
  cfg.n_final = parse_integer<int>(get("n_final"));
  cfg.n_runs = parse_integer<int>(get("n_runs"));
  cfg.output = get("output") == "softplus" ? OutputMap::kSoftplus : OutputMap::kExp;
  cfg.alpha = alpha;
  cfg.seed = seed;
  return cfg;
}

// Value of `row` recomputed from its inputs. Stochastic methods are re-run
// from the recorded seed only when `stochastic` is set; otherwise, and for
// unknown methods, the result is empty.
inline std::optional<double> recompute_row(const SweepRow& row, bool stochastic = false) {
  const auto notes = parse_notes(row.notes);
  auto note_number = [&](const char* key) -> std::optional<double> {
    const auto it = notes.find(key);
    if (it == notes.end()) return std::nullopt;
    return parse_number(it->second);
  };
  const auto tol = note_number("tol");
  const std::string& m = row.method;
  if (m == "quadrature") {
    return tol ? renyi_ncx2_quadrature(row.alpha, row.d, row.theta_v, row.theta_w, *tol)
               : renyi_ncx2_quadrature(row.alpha, row.d, row.theta_v, row.theta_w);
  }
  if (m == "finite_n" || m == "finite_n_quadrature") {
    if (!row.n_syn) throw UsageError("verify: finite-n row without n_syn");
    return tol ? renyi_finite_n_k1(row.alpha, row.d, *row.n_syn, row.theta_v, row.theta_w, *tol)
               : renyi_finite_n_k1(row.alpha, row.d, *row.n_syn, row.theta_v, row.theta_w);
  }
  if (m == "local_band_lo" || m == "local_band_hi") {
    const auto band = local_band_k1(row.alpha, row.d, row.theta_w, row.C);
    return (m == "local_band_lo" ? band.eta_lo : band.eta_hi) * rdp_gaussian(row.alpha, row.delta);
  }
  if (m == "global") return global_bound_multik(row.alpha, row.C, row.d, row.k, row.delta);
  if (m == "post_processing" || m == "gaussian_exact") return rdp_gaussian(row.alpha, row.delta);
  if (m == "criterion_bound") {
    if (row.delta == 0.0) return 0.0;
    return criterion_bound(row.alpha, 1.0, gaussian_envelope(row.alpha), 0.0, row.delta);
  }
  if (m == "gaussian_tradeoff" || m == "prior_tradeoff") {
    const auto x = note_number("x");
    if (!x) throw UsageError("verify: trade-off row without x");
    if (m == "gaussian_tradeoff") return gaussian_tradeoff(row.delta, *x);
    PriorWorkParams p;
    p.c_prime = row.C;
    p.n_syn = row.n_syn.value_or(1);
    p.d = row.d;
    p.k = row.k;
    p.delta_sens = row.delta;
    p.alpha = row.alpha;
    return prior_lower_tradeoff(p, *x);
  }
  if (!stochastic) return std::nullopt;
  if (m == "variational") {
    const TrainConfig cfg = train_config_from_notes(notes, row.alpha, row.seed);
    return variational_release_k1(row.d, row.n_syn, row.theta_v, row.theta_w, cfg).mean;
  }
  if (m == "monte_carlo") {
    const auto samples = note_number("samples");
    if (!samples) throw UsageError("verify: monte_carlo row without samples");
    RngStream rng(row.seed);
    return renyi_mc_ncx2(row.alpha, row.d, row.theta_v, row.theta_w,
                         static_cast<std::int64_t>(*samples), rng)
        .estimate;
  }
  return std::nullopt;
}

}  // namespace synthdp::cli

#endif  // SYNTHDP_CLI_RECOMPUTE_HPP_

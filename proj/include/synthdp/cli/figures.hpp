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

// Figure tables and charts: the finite-n_syn plateau study, the sensitivity
// sweep against the local band, the Gaussian criterion, and the trade-off
// curve of the earlier analysis.

#ifndef SYNTHDP_CLI_FIGURES_HPP_
#define SYNTHDP_CLI_FIGURES_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "synthdp/accountant/bounds.hpp"
#include "synthdp/accountant/prior_work.hpp"
#include "synthdp/cli/csv.hpp"
#include "synthdp/cli/svg.hpp"
#include "synthdp/estimators/experiments.hpp"

namespace synthdp::cli {

enum class Profile { kCi, kFull };

struct Figure {
  SweepResult rows;
  Chart chart;
};

inline const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"fig2", "fig3", "gauss-criterion",
                                              "prior-tradeoff"};
  return names;
}

inline TrainConfig profile_config(Profile profile) {
  return profile == Profile::kCi ? TrainConfig::ci() : TrainConfig();
}

inline std::vector<std::int64_t> fig2_n_grid() {
  std::vector<std::int64_t> grid;
  for (std::int64_t n = 1; n <= 512; n *= 2) grid.push_back(n);
  return grid;
}

// k = Delta = 1, C = alpha = 2.
inline Figure figure_plateau(Profile profile, std::uint64_t seed, int threads) {
  TrainConfig cfg = profile_config(profile);
  cfg.seed = seed;
  Figure fig;
  fig.rows = plateau_experiment(2.0, 2.0, 1.0, {2, 5, 10}, fig2_n_grid(), cfg, threads);
  fig.chart.title = "D_2(ZV || ZW) against n_syn (C = 2, Delta = 1, k = 1)";
  fig.chart.x_label = "n_syn";
  fig.chart.y_label = "Renyi divergence (nats)";
  fig.chart.log2_x = true;
  std::map<int, Series> curves, plateaus;
  for (const auto& row : fig.rows) {
    if (row.method == "variational") {
      auto& s = curves[row.d];
      s.label = "d=" + std::to_string(row.d);
      s.x.push_back(static_cast<double>(*row.n_syn));
      s.y.push_back(row.value);
    } else {
      auto& s = plateaus[row.d];
      s.label = "plateau d=" + std::to_string(row.d);
      s.dashed = true;
      s.x = {1.0, 512.0};
      s.y = {row.value, row.value};
    }
  }
  for (auto& [d, s] : curves) fig.chart.series.push_back(s);
  for (auto& [d, s] : plateaus) fig.chart.series.push_back(s);
  fig.chart.series.push_back({"post-processing", {1.0, 512.0}, {1.0, 1.0}, true});
  return fig;
}

// C = 2, alpha = 2, 1 <= ||w|| <= ||v|| <= C. The full profile adds
// variational estimates of the Gram-statistic divergence.
inline Figure figure_delta_sweep(Profile profile, std::uint64_t seed, int threads) {
  const double step = profile == Profile::kCi ? 0.1 : 0.05;
  std::vector<double> grid;
  for (int i = 1; i * step < 1.0 - 1e-9; ++i) grid.push_back(i * step);
  const std::vector<int> d_list{10, 50};
  Figure fig;
  fig.rows = delta_sweep_experiment(2.0, 2.0, d_list, grid, threads);
  if (profile == Profile::kFull) {
    TrainConfig cfg = profile_config(profile);
    const std::size_t count = d_list.size() * grid.size();
    SweepResult extra(count);
    parallel_for(count, threads, [&](std::size_t i) {
      const int d = d_list[i / grid.size()];
      const double delta = grid[i % grid.size()];
      TrainConfig cell = cfg;
      cell.seed = cell_seed(seed, d, 0, delta);
      extra[i] = variational_row("delta_sweep", 2.0, delta, d, std::nullopt, 2.0, 2.0 - delta,
                                 cell);
    });
    fig.rows.insert(fig.rows.end(), extra.begin(), extra.end());
  }
  fig.chart.title = "D_2(V'V || W'W) against Delta (C = 2)";
  fig.chart.x_label = "Delta";
  fig.chart.y_label = "Renyi divergence (nats)";
  std::map<std::pair<std::string, int>, Series> by_curve;
  for (const auto& row : fig.rows) {
    auto& s = by_curve[{row.method, row.d}];
    s.label = row.method + " d=" + std::to_string(row.d);
    s.dashed = row.method.starts_with("local_band");
    s.x.push_back(row.delta);
    s.y.push_back(row.value);
  }
  for (auto& [key, s] : by_curve) fig.chart.series.push_back(s);
  return fig;
}

// Gaussian location family, sigma = 1, alpha = 2: the exact divergence and
// the Fisher criterion bound on Delta = 0.1, 0.2, ..., 3.
inline Figure figure_gauss_criterion() {
  const double alpha = 2.0;
  Figure fig;
  Series exact{"exact alpha Delta^2 / 2", {}, {}, false};
  Series bound{"criterion bound", {}, {}, true};
  for (int i = 1; i <= 30; ++i) {
    const double delta = 0.1 * i;
    SweepRow row;
    row.experiment = "gauss_criterion";
    row.alpha = alpha;
    row.d = 1;
    row.delta = delta;
    row.theta_v = delta;
    row.theta_w = 0.0;
    row.notes = "family=gaussian;sigma=1";
    row.method = "gaussian_exact";
    row.value = rdp_gaussian(alpha, delta);
    fig.rows.push_back(row);
    exact.x.push_back(delta);
    exact.y.push_back(row.value);
    row.method = "criterion_bound";
    row.value = criterion_bound(alpha, 1.0, gaussian_envelope(alpha), 0.0, delta);
    fig.rows.push_back(row);
    bound.x.push_back(delta);
    bound.y.push_back(row.value);
  }
  fig.chart = {"Fisher criterion against the exact Gaussian divergence (alpha = 2)", "Delta",
               "Renyi divergence (nats)", false, {exact, bound}};
  return fig;
}

// Delta = 1, C' = 1, d = 60, n_syn = 1, k = 1. The C column holds C'.
inline Figure figure_prior_tradeoff() {
  PriorWorkParams p;
  p.c_prime = 1.0;
  p.d = 60;
  p.n_syn = 1;
  p.k = 1;
  p.delta_sens = 1.0;
  const auto conv = prior_rdp_conversion(p);
  Figure fig;
  Series gauss{"Gaussian G_Delta", {}, {}, true};
  Series lower{"max(G_Delta, 1 - x - 2C)", {}, {}, false};
  const int points = 200;
  for (int i = 0; i <= points; ++i) {
    const double x = static_cast<double>(i) / points;
    SweepRow row;
    row.experiment = "prior_tradeoff";
    row.alpha = p.alpha;
    row.C = p.c_prime;
    row.d = p.d;
    row.k = p.k;
    row.delta = p.delta_sens;
    row.n_syn = p.n_syn;
    row.notes = "x=" + format_number(x);
    row.method = "gaussian_tradeoff";
    row.value = gaussian_tradeoff(p.delta_sens, x);
    fig.rows.push_back(row);
    gauss.x.push_back(x);
    gauss.y.push_back(row.value);
    row.method = "prior_tradeoff";
    row.value = prior_lower_tradeoff(p, x);
    if (conv.z_plus) {
      row.notes += ";z_minus=" + format_number(*conv.z_minus) +
                   ";z_plus=" + format_number(*conv.z_plus);
    }
    fig.rows.push_back(row);
    lower.x.push_back(x);
    lower.y.push_back(row.value);
  }
  fig.chart = {"Trade-off curves (Delta = 1, C' = 1, d = 60, n_syn = 1)", "type I error x",
               "type II error", false, {gauss, lower}};
  return fig;
}

inline Figure build_figure(const std::string& which, Profile profile, std::uint64_t seed,
                           int threads) {
  if (which == "fig2") return figure_plateau(profile, seed, threads);
  if (which == "fig3") return figure_delta_sweep(profile, seed, threads);
  if (which == "gauss-criterion") return figure_gauss_criterion();
  if (which == "prior-tradeoff") return figure_prior_tradeoff();
  throw UsageError("figures: unknown figure '" + which + "'");
}

}  // namespace synthdp::cli

#endif  // SYNTHDP_CLI_FIGURES_HPP_

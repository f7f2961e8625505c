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

// Experiment drivers: rows of self-describing results for the plateau
// (finite n_syn) study, the sensitivity sweep of the Gram-statistic plateau,
// and the convergence gap of the exact finite-n divergence.

#ifndef SYNTHDP_ESTIMATORS_EXPERIMENTS_HPP_
#define SYNTHDP_ESTIMATORS_EXPERIMENTS_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "synthdp/accountant/bounds.hpp"
#include "synthdp/distributions/generator.hpp"
#include "synthdp/estimators/renyi.hpp"
#include "synthdp/estimators/variational.hpp"
#include "synthdp/mathkit/errors.hpp"
#include "synthdp/mathkit/parallel.hpp"
#include "synthdp/mathkit/rng.hpp"

namespace synthdp {

// One result row carrying its full input tuple.
struct SweepRow {
  std::string experiment;
  double alpha = 2.0;
  double C = 0.0;
  int d = 0;
  int k = 1;
  double delta = 0.0;
  SyntheticCount n_syn;  // empty: unlimited release
  double theta_v = 0.0;
  double theta_w = 0.0;
  std::string method;
  double value = 0.0;
  std::optional<double> stderr_;  // empty for deterministic methods
  std::uint64_t seed = 0;
  std::string notes;
};

using SweepResult = std::vector<SweepRow>;

// Seed for one (d, n_syn, Delta) cell, a function of the cell alone so that
// a row can be recomputed without the rest of the grid. n_syn = 0 stands for
// the unlimited release.
inline std::uint64_t cell_seed(std::uint64_t base, int d, std::int64_t n_syn,
                               double delta = 0.0) {
  RngStream stream(base, (static_cast<std::uint64_t>(d) << 32) ^
                             static_cast<std::uint64_t>(n_syn));
  if (delta != 0.0) stream = stream.split(std::bit_cast<std::uint64_t>(delta));
  return stream.next() >> 1;
}

// Variational estimate of D_alpha(ZV || ZW) for a collinear k = 1 pair with
// ||v|| = theta_v, ||w|| = theta_w. The network sees log(||Z M||^2 / n_syn),
// a sufficient statistic of the release; an empty n_syn uses the Gram
// statistic log ||M||^2 instead.
inline DivergenceEstimate variational_release_k1(int d, SyntheticCount n_syn, double theta_v,
                                                 double theta_w, const TrainConfig& cfg,
                                                 int threads = 1) {
  const auto pair = GeneratorPair::collinear(d, theta_v, theta_w);
  auto sampler = [pair, n_syn, d, theta_v, theta_w](Which which) -> Sampler {
    if (!n_syn) {
      const NoncentralChiSq gram(d, which == Which::kV ? theta_v : theta_w);
      return [gram](RngStream& rng, std::span<double> out) {
        out[0] = std::log(sample_ncx2(gram, rng));
      };
    }
    const double n = static_cast<double>(*n_syn);
    return [pair, n_syn, n, which](RngStream& rng, std::span<double> out) {
      out[0] = std::log(sample_release_sq_norm_k1(pair, *n_syn, rng, which) / n);
    };
  };
  return variational_renyi(sampler(Which::kV), sampler(Which::kW), 1, cfg, threads);
}

// Training configuration as note entries; with the row's seed and inputs it
// pins the estimate.
inline std::string train_notes(const TrainConfig& cfg) {
  std::ostringstream notes;
  notes.precision(17);
  notes << "steps=" << cfg.steps << ";batch=" << cfg.batch << ";lr=" << cfg.lr
        << ";hidden=" << cfg.hidden << ";eval_every=" << cfg.eval_every
        << ";patience=" << cfg.patience << ";n_eval=" << cfg.n_eval
        << ";n_final=" << cfg.n_final << ";n_runs=" << cfg.n_runs
        << ";output=" << (cfg.output == OutputMap::kExp ? "exp" : "softplus");
  return notes.str();
}

inline SweepRow variational_row(const std::string& experiment, double C, double delta, int d,
                                SyntheticCount n_syn, double theta_v, double theta_w,
                                TrainConfig cfg) {
  const auto est = variational_release_k1(d, n_syn, theta_v, theta_w, cfg);
  SweepRow row;
  row.experiment = experiment;
  row.alpha = cfg.alpha;
  row.C = C;
  row.d = d;
  row.delta = delta;
  row.n_syn = n_syn;
  row.theta_v = theta_v;
  row.theta_w = theta_w;
  row.method = "variational";
  row.value = est.mean;
  row.stderr_ = est.std / std::sqrt(static_cast<double>(est.runs));
  row.seed = cfg.seed;
  std::ostringstream notes;
  notes.precision(17);
  notes << "std=" << est.std << ";failed=" << est.failed_runs << ";" << train_notes(cfg);
  row.notes = notes.str();
  return row;
}

inline SweepRow plateau_row(const std::string& experiment, double alpha, double C,
                            double delta, int d, double theta_v, double theta_w) {
  SweepRow row;
  row.experiment = experiment;
  row.alpha = alpha;
  row.C = C;
  row.d = d;
  row.delta = delta;
  row.theta_v = theta_v;
  row.theta_w = theta_w;
  row.method = "quadrature";
  row.value = renyi_ncx2_quadrature(alpha, d, theta_v, theta_w);
  return row;
}

// Plateau study: ||v|| = C, ||w|| = C - Delta collinear. One variational row
// per (d, n_syn) followed by one plateau row per d.
inline SweepResult plateau_experiment(double alpha, double C, double delta_sens,
                                      const std::vector<int>& d_list,
                                      const std::vector<std::int64_t>& n_grid,
                                      TrainConfig cfg, int threads = 1) {
  require(delta_sens >= 0.0 && delta_sens <= C, "plateau_experiment: requires 0 <= Delta <= C");
  cfg.alpha = alpha;
  cfg.validate();
  const double theta_v = C, theta_w = C - delta_sens;
  const std::size_t cells = d_list.size() * n_grid.size();
  SweepResult rows(cells + d_list.size());
  parallel_for(cells + d_list.size(), threads, [&](std::size_t i) {
    if (i < cells) {
      const int d = d_list[i / n_grid.size()];
      const std::int64_t n = n_grid[i % n_grid.size()];
      TrainConfig cell = cfg;
      cell.seed = cell_seed(cfg.seed, d, n);
      rows[i] = variational_row("plateau", C, delta_sens, d, n, theta_v, theta_w, cell);
    } else {
      const int d = d_list[i - cells];
      rows[i] = plateau_row("plateau", alpha, C, delta_sens, d, theta_v, theta_w);
      std::ostringstream notes;
      notes.precision(17);
      notes << "post_processing=" << rdp_gaussian(alpha, delta_sens);
      rows[i].notes = notes.str();
    }
  });
  return rows;
}

// Sensitivity sweep: ||w|| = max(1, C - Delta), ||v|| = ||w|| + Delta <= C. Per
// (d, Delta): the plateau and, for d >= 3, the local band envelope
// eta * alpha Delta^2 / 2.
inline SweepResult delta_sweep_experiment(double alpha, double C, const std::vector<int>& d_list,
                                          const std::vector<double>& delta_grid,
                                          int threads = 1) {
  const std::size_t cells = d_list.size() * delta_grid.size();
  std::vector<SweepResult> parts(cells);
  parallel_for(cells, threads, [&](std::size_t i) {
    const int d = d_list[i / delta_grid.size()];
    const double delta = delta_grid[i % delta_grid.size()];
    const double theta_w = std::max(1.0, C - delta);
    const double theta_v = theta_w + delta;
    require(theta_v <= C + 1e-12, "delta_sweep_experiment: requires max(1, C - Delta) + Delta <= C");
    SweepResult& out = parts[i];
    out.push_back(plateau_row("delta_sweep", alpha, C, delta, d, theta_v, theta_w));
    if (d >= 3) {
      const auto band = local_band_k1(alpha, d, theta_w, C);
      const double base = rdp_gaussian(alpha, delta);
      for (auto [method, eta] : {std::pair{"local_band_lo", band.eta_lo},
                                 std::pair{"local_band_hi", band.eta_hi}}) {
        SweepRow row = out.front();
        row.method = method;
        row.value = eta * base;
        out.push_back(row);
      }
    }
  });
  SweepResult rows;
  for (auto& part : parts) rows.insert(rows.end(), part.begin(), part.end());
  return rows;
}

// Exact finite-n divergence over n_grid plus the plateau row.
inline SweepResult finite_n_experiment(double alpha, int d, double theta_v, double theta_w,
                                       const std::vector<std::int64_t>& n_grid,
                                       int threads = 1) {
  SweepResult rows(n_grid.size() + 1);
  const double delta = std::abs(theta_v - theta_w);
  const double C = std::max(theta_v, theta_w);
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    if (i == n_grid.size()) {
      rows[i] = plateau_row("finite_n", alpha, C, delta, d, theta_v, theta_w);
      return;
    }
    SweepRow row;
    row.experiment = "finite_n";
    row.alpha = alpha;
    row.C = C;
    row.d = d;
    row.delta = delta;
    row.n_syn = n_grid[i];
    row.theta_v = theta_v;
    row.theta_w = theta_w;
    row.method = "finite_n_quadrature";
    row.value = renyi_finite_n_k1(alpha, d, n_grid[i], theta_v, theta_w);
    rows[i] = row;
  });
  return rows;
}

}  // namespace synthdp

#endif  // SYNTHDP_ESTIMATORS_EXPERIMENTS_HPP_

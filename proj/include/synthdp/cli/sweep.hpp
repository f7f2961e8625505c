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

// JSON sweep configuration and its execution.
//
//   {"experiments": [{"name": ..., "method": ..., "alpha": ..., "C": ...,
//     "d": int | "d_list": [int], "k": int, "delta": x | "delta_grid": [x],
//     "n_grid": [int]?, "samples": int?, "train": {...}?, "seed": int}]}
//
// Every cell uses the collinear pair v = C e1, w = (C - Delta) e1, so that
// ||v|| = C, ||w|| = |C - Delta| and ||v - w|| = Delta.

#ifndef SYNTHDP_CLI_SWEEP_HPP_
#define SYNTHDP_CLI_SWEEP_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "synthdp/accountant/bounds.hpp"
#include "synthdp/cli/csv.hpp"
#include "synthdp/estimators/experiments.hpp"
#include "synthdp/estimators/renyi.hpp"
#include "synthdp/mathkit/parallel.hpp"

namespace synthdp::cli {

inline const std::set<std::string>& sweep_methods() {
  static const std::set<std::string> methods{"quadrature",  "finite_n", "variational",
                                             "monte_carlo", "global",   "post_processing",
                                             "local_band"};
  return methods;
}

struct ExperimentSpec {
  std::string name;
  std::string method;
  double alpha = 2.0;
  double C = 1.0;
  std::vector<int> d_list;
  int k = 1;
  std::vector<double> delta_grid;
  std::vector<std::int64_t> n_grid;
  std::int64_t samples = 100000;
  TrainConfig train;
  std::uint64_t seed = 0;
};

namespace internal {

class SchemaErrors {
 public:
  void add(const std::string& where, const std::string& what) {
    errors_.push_back(where + ": " + what);
  }
  void raise_if_any() const {
    if (errors_.empty()) return;
    std::string msg = "config: schema violation";
    for (const auto& e : errors_) msg += "\n  " + e;
    throw UsageError(msg);
  }

 private:
  std::vector<std::string> errors_;
};

inline bool is_integer(const nlohmann::json& j) {
  return j.is_number_integer() || j.is_number_unsigned();
}

inline void parse_train(const nlohmann::json& j, const std::string& where, TrainConfig& cfg,
                        SchemaErrors& errors) {
  if (!j.is_object()) {
    errors.add(where, "must be an object");
    return;
  }
  for (const auto& [key, value] : j.items()) {
    int* target = nullptr;
    if (key == "steps") target = &cfg.steps;
    else if (key == "batch") target = &cfg.batch;
    else if (key == "hidden") target = &cfg.hidden;
    else if (key == "eval_every") target = &cfg.eval_every;
    else if (key == "patience") target = &cfg.patience;
    else if (key == "n_eval") target = &cfg.n_eval;
    else if (key == "n_final") target = &cfg.n_final;
    else if (key == "n_runs") target = &cfg.n_runs;
    if (target != nullptr) {
      if (is_integer(value)) *target = value.get<int>();
      else errors.add(where + "." + key, "must be an integer");
    } else if (key == "lr") {
      if (value.is_number()) cfg.lr = value.get<double>();
      else errors.add(where + ".lr", "must be a number");
    } else {
      errors.add(where + "." + key, "unknown key");
    }
  }
}

}  // namespace internal

inline std::vector<ExperimentSpec> parse_config(const nlohmann::json& root) {
  internal::SchemaErrors errors;
  std::vector<ExperimentSpec> specs;
  if (!root.is_object()) throw UsageError("config: top level must be an object");
  for (const auto& [key, value] : root.items()) {
    if (key != "experiments") errors.add(key, "unknown key");
  }
  if (!root.contains("experiments") || !root["experiments"].is_array()) {
    errors.add("experiments", "missing or not an array");
    errors.raise_if_any();
  }
  static const std::set<std::string> known{"name",  "method",     "alpha",  "C",
                                           "d",     "d_list",     "k",      "delta",
                                           "delta_grid", "n_grid", "samples", "train",
                                           "seed"};
  std::size_t index = 0;
  for (const auto& e : root["experiments"]) {
    const std::string where = "experiments[" + std::to_string(index++) + "]";
    ExperimentSpec spec;
    if (!e.is_object()) {
      errors.add(where, "must be an object");
      continue;
    }
    for (const auto& [key, value] : e.items()) {
      if (!known.contains(key)) errors.add(where + "." + key, "unknown key");
    }
    for (const char* key : {"name", "method", "alpha", "C", "k", "seed"}) {
      if (!e.contains(key)) errors.add(where, std::string("missing key '") + key + "'");
    }
    if (e.contains("d") == e.contains("d_list")) {
      errors.add(where, "exactly one of 'd' and 'd_list' is required");
    }
    if (e.contains("delta") == e.contains("delta_grid")) {
      errors.add(where, "exactly one of 'delta' and 'delta_grid' is required");
    }
    auto field = [&](const char* key, auto check, const char* type, auto assign) {
      if (!e.contains(key)) return;
      const auto& v = e[key];
      if (check(v)) assign(v);
      else errors.add(where + "." + key, std::string("must be ") + type);
    };
    auto is_int = [](const nlohmann::json& v) { return internal::is_integer(v); };
    auto is_num = [](const nlohmann::json& v) { return v.is_number(); };
    auto int_array = [](const nlohmann::json& v) {
      if (!v.is_array()) return false;
      for (const auto& x : v) {
        if (!internal::is_integer(x)) return false;
      }
      return true;
    };
    auto num_array = [](const nlohmann::json& v) {
      if (!v.is_array()) return false;
      for (const auto& x : v) {
        if (!x.is_number()) return false;
      }
      return true;
    };
    field("name", [](const nlohmann::json& v) { return v.is_string(); }, "a string",
          [&](const nlohmann::json& v) { spec.name = v.get<std::string>(); });
    field("method", [](const nlohmann::json& v) { return v.is_string(); }, "a string",
          [&](const nlohmann::json& v) { spec.method = v.get<std::string>(); });
    if (!spec.method.empty() && !sweep_methods().contains(spec.method)) {
      errors.add(where + ".method", "unknown method '" + spec.method + "'");
    }
    field("alpha", is_num, "a number", [&](const nlohmann::json& v) { spec.alpha = v.get<double>(); });
    field("C", is_num, "a number", [&](const nlohmann::json& v) { spec.C = v.get<double>(); });
    field("k", is_int, "an integer", [&](const nlohmann::json& v) { spec.k = v.get<int>(); });
    field("d", is_int, "an integer",
          [&](const nlohmann::json& v) { spec.d_list = {v.get<int>()}; });
    field("d_list", int_array, "an array of integers",
          [&](const nlohmann::json& v) { spec.d_list = v.get<std::vector<int>>(); });
    field("delta", is_num, "a number",
          [&](const nlohmann::json& v) { spec.delta_grid = {v.get<double>()}; });
    field("delta_grid", num_array, "an array of numbers",
          [&](const nlohmann::json& v) { spec.delta_grid = v.get<std::vector<double>>(); });
    field("n_grid", int_array, "an array of integers",
          [&](const nlohmann::json& v) { spec.n_grid = v.get<std::vector<std::int64_t>>(); });
    field("samples", is_int, "an integer",
          [&](const nlohmann::json& v) { spec.samples = v.get<std::int64_t>(); });
    field("seed", [](const nlohmann::json& v) { return v.is_number_unsigned(); },
          "a non-negative integer",
          [&](const nlohmann::json& v) { spec.seed = v.get<std::uint64_t>(); });
    if (e.contains("train")) internal::parse_train(e["train"], where + ".train", spec.train, errors);
    if (spec.method == "finite_n" && spec.n_grid.empty()) {
      errors.add(where, "method 'finite_n' requires 'n_grid'");
    }
    specs.push_back(std::move(spec));
  }
  errors.raise_if_any();
  return specs;
}

namespace internal {

inline std::string tol_note(std::optional<double> tol) {
  if (!tol) return "";
  return "tol=" + format_number(*tol);
}

}  // namespace internal

// Rows of one experiment, ordered by d, then Delta, then n_syn.
inline SweepResult run_experiment(const ExperimentSpec& e, int threads = 1,
                                  std::optional<double> tol = std::nullopt) {
  require(e.alpha > 1.0, "sweep: alpha must be > 1");
  require(e.C > 0.0, "sweep: C must be > 0");
  require(e.k >= 1, "sweep: k must be >= 1");
  for (int d : e.d_list) require(d >= e.k, "sweep: requires d >= k");
  for (double delta : e.delta_grid) {
    require(delta >= 0.0 && delta <= 2.0 * e.C, "sweep: requires 0 <= delta <= 2C");
  }
  for (auto n : e.n_grid) require(n >= 1, "sweep: n_grid entries must be >= 1");
  const bool plateau_family = e.method == "quadrature" || e.method == "finite_n" ||
                              e.method == "variational" || e.method == "monte_carlo" ||
                              e.method == "local_band";
  require(!plateau_family || e.k == 1, "sweep: method '" + e.method + "' requires k = 1");
  if (e.method == "variational") {
    TrainConfig cfg = e.train;
    cfg.alpha = e.alpha;
    cfg.validate();
  }
  if (e.method == "monte_carlo") require(e.samples >= 2, "sweep: samples must be >= 2");

  std::vector<SyntheticCount> counts;
  if ((e.method == "finite_n" || e.method == "variational") && !e.n_grid.empty()) {
    for (auto n : e.n_grid) counts.emplace_back(n);
  } else {
    counts.emplace_back(std::nullopt);
  }
  const std::size_t per_d = e.delta_grid.size() * counts.size();
  const std::size_t cells = e.d_list.size() * per_d;
  std::vector<SweepResult> parts(cells);
  parallel_for(cells, threads, [&](std::size_t i) {
    const int d = e.d_list[i / per_d];
    const double delta = e.delta_grid[(i % per_d) / counts.size()];
    const SyntheticCount n = counts[i % counts.size()];
    SweepRow row;
    row.experiment = e.name;
    row.alpha = e.alpha;
    row.C = e.C;
    row.d = d;
    row.k = e.k;
    row.delta = delta;
    row.n_syn = n;
    row.theta_v = e.C;
    row.theta_w = std::abs(e.C - delta);
    row.method = e.method;
    row.seed = e.seed;
    SweepResult& out = parts[i];
    if (e.method == "quadrature") {
      row.value = tol ? renyi_ncx2_quadrature(e.alpha, d, row.theta_v, row.theta_w, *tol)
                      : renyi_ncx2_quadrature(e.alpha, d, row.theta_v, row.theta_w);
      row.notes = internal::tol_note(tol);
    } else if (e.method == "finite_n") {
      row.value = tol ? renyi_finite_n_k1(e.alpha, d, *n, row.theta_v, row.theta_w, *tol)
                      : renyi_finite_n_k1(e.alpha, d, *n, row.theta_v, row.theta_w);
      row.notes = internal::tol_note(tol);
    } else if (e.method == "variational") {
      TrainConfig cfg = e.train;
      cfg.alpha = e.alpha;
      cfg.seed = cell_seed(e.seed, d, n.value_or(0), delta);
      SweepRow est = variational_row(e.name, e.C, delta, d, n, row.theta_v, row.theta_w, cfg);
      est.k = e.k;
      row = est;
    } else if (e.method == "monte_carlo") {
      row.seed = cell_seed(e.seed, d, 0, delta);
      RngStream rng(row.seed);
      const auto mc = renyi_mc_ncx2(e.alpha, d, row.theta_v, row.theta_w, e.samples, rng);
      row.value = mc.estimate;
      row.stderr_ = mc.stderr_;
      row.notes = "samples=" + std::to_string(e.samples);
    } else if (e.method == "global") {
      row.value = global_bound_multik(e.alpha, e.C, d, e.k, delta);
    } else if (e.method == "post_processing") {
      row.value = rdp_gaussian(e.alpha, delta);
    } else if (e.method == "local_band") {
      const auto band = local_band_k1(e.alpha, d, std::min(row.theta_w, e.C), e.C);
      const double base = rdp_gaussian(e.alpha, delta);
      row.method = "local_band_lo";
      row.value = band.eta_lo * base;
      out.push_back(row);
      row.method = "local_band_hi";
      row.value = band.eta_hi * base;
    }
    out.push_back(row);
  });
  SweepResult rows;
  for (auto& part : parts) rows.insert(rows.end(), part.begin(), part.end());
  return rows;
}

inline SweepResult run_sweep(const std::vector<ExperimentSpec>& specs, int threads = 1,
                             std::optional<double> tol = std::nullopt) {
  SweepResult rows;
  for (const auto& spec : specs) {
    auto part = run_experiment(spec, threads, tol);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

}  // namespace synthdp::cli

#endif  // SYNTHDP_CLI_SWEEP_HPP_

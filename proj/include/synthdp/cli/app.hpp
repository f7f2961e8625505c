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

// Command-line front end. run_cli() parses arguments, dispatches to a
// command and maps failures onto the exit-code contract:
//   0 success, 2 usage error, 3 domain error, 4 numerical failure.

#ifndef SYNTHDP_CLI_APP_HPP_
#define SYNTHDP_CLI_APP_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "synthdp/accountant/bounds.hpp"
#include "synthdp/accountant/prior_work.hpp"
#include "synthdp/cli/csv.hpp"
#include "synthdp/cli/figures.hpp"
#include "synthdp/cli/recompute.hpp"
#include "synthdp/cli/svg.hpp"
#include "synthdp/cli/sweep.hpp"
#include "synthdp/estimators/experiments.hpp"
#include "synthdp/estimators/fisher.hpp"
#include "synthdp/estimators/renyi.hpp"
#include "synthdp/mathkit/errors.hpp"

namespace synthdp::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kDomain = 3, kNumerical = 4 };

struct GlobalOptions {
  std::uint64_t seed = 1;
  int threads = 1;
  std::optional<double> tol;
  std::string out;
  bool json = false;
};

namespace internal {

inline std::string num(double x) {
  if (!std::isfinite(x)) return format_number(x);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

inline nlohmann::json json_number(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(format_number(x));
}

// Writes via a temporary file and a rename, so readers never see a partial file.
inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + tmp.string() + "'");
    out << text;
    if (!out.flush()) throw UsageError("cannot write '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw UsageError("cannot write '" + path.string() + "': " + ec.message());
}

inline void emit(const GlobalOptions& g, std::ostream& out, const std::string& text) {
  if (g.out.empty()) {
    out << text;
  } else {
    write_file(g.out, text);
  }
}

inline nlohmann::json params_json(const PrivacyParams& p) {
  nlohmann::json j{{"alpha", p.alpha}, {"C", p.C}, {"d", p.d}, {"k", p.k},
                   {"delta", p.delta_sens}};
  j["n_syn"] = p.n_syn ? nlohmann::json(*p.n_syn) : nlohmann::json("inf");
  return j;
}

inline nlohmann::json report_json(const BoundReport& r) {
  nlohmann::json j{{"method", std::string(to_string(r.method))},
                   {"value", json_number(r.value)},
                   {"regime", std::string(to_string(r.regime))},
                   {"amplification_factor", json_number(r.amplification_factor())},
                   {"notes", r.notes},
                   {"inputs", params_json(r.inputs)}};
  if (!r.constituents.empty()) {
    j["constituents"] = nlohmann::json::array();
    for (const auto& c : r.constituents) j["constituents"].push_back(report_json(c));
  }
  return j;
}

inline void report_table(std::ostringstream& out, const BoundReport& r, const std::string& indent) {
  out << pad(indent + std::string(to_string(r.method)), 20) << pad(num(r.value), 22)
      << pad(std::string(to_string(r.regime)), 15) << num(r.amplification_factor()) << '\n';
  for (const auto& c : r.constituents) report_table(out, c, indent + "  ");
}

}  // namespace internal

struct BoundOptions {
  PrivacyParams params;
  std::string method = "min";
  std::optional<double> norm_w;
  std::optional<std::int64_t> n_syn;
  std::optional<double> c_prime;
};

inline BoundReport prior_report(const PrivacyParams& params, double c_prime) {
  PriorWorkParams p;
  p.c_prime = c_prime;
  p.n_syn = params.n_syn.value_or(1);
  p.d = params.d;
  p.k = params.k;
  p.delta_sens = params.delta_sens;
  p.alpha = params.alpha;
  const auto conv = prior_rdp_conversion(p);
  BoundReport r;
  r.value = conv.l_alpha;
  r.method = BoundMethod::kPriorWork;
  r.inputs = params;
  r.inputs.n_syn = p.n_syn;
  r.regime = synthdp::internal::classify(conv.l_alpha, rdp_gaussian(p.alpha, p.delta_sens));
  std::ostringstream notes;
  notes.precision(12);
  notes << "earlier trade-off analysis with C'=" << c_prime;
  if (conv.z_plus) notes << "; z_minus=" << *conv.z_minus << " z_plus=" << *conv.z_plus;
  r.notes = notes.str();
  return r;
}

inline int cmd_bound(const BoundOptions& o, const GlobalOptions& g, std::ostream& out) {
  if (o.norm_w && o.method != "local") throw UsageError("bound: --norm-w requires --method local");
  if (o.c_prime && o.method != "prior") throw UsageError("bound: --c-prime requires --method prior");
  PrivacyParams params = o.params;
  params.n_syn = o.n_syn;
  params.validate();
  BoundReport report;
  if (o.method == "post") {
    report = post_processing_report(params);
  } else if (o.method == "local") {
    const double w = o.norm_w.value_or(std::min(params.C, std::abs(params.C - params.delta_sens)));
    report = local_band_report(params, w);
  } else if (o.method == "global") {
    report = global_report(params);
  } else if (o.method == "prior") {
    report = prior_report(params, o.c_prime.value_or(1.0));
  } else {
    report = account(params);
  }
  if (g.json) {
    internal::emit(g, out, internal::report_json(report).dump(2) + "\n");
    return kOk;
  }
  std::ostringstream table;
  table << internal::pad("method", 20) << internal::pad("value", 22)
        << internal::pad("regime", 15) << "amplification\n";
  internal::report_table(table, report, "");
  table << "notes: " << report.notes << '\n';
  internal::emit(g, out, table.str());
  return kOk;
}

struct FisherOptions {
  std::vector<int> d;
  std::vector<double> theta;
  std::int64_t samples = 100000;
};

inline int cmd_fisher(const FisherOptions& o, const GlobalOptions& g, std::ostream& out) {
  require(o.samples == 0 || o.samples >= 1000, "fisher: --samples must be 0 or >= 1000");
  struct Row {
    int d;
    double theta;
    FisherBounds bounds;
    double quadrature = 0.0;
    std::optional<FisherMc> mc;
    std::string status;
  };
  std::vector<std::pair<int, double>> cells;
  for (int d : o.d) {
    for (double t : o.theta) cells.emplace_back(d, t);
  }
  std::vector<Row> rows(cells.size());
  parallel_for(cells.size(), g.threads, [&](std::size_t i) {
    auto [d, theta] = cells[i];
    Row& r = rows[i];
    r.d = d;
    r.theta = theta;
    r.bounds = fisher_bounds_ncx2(d, theta);
    if (theta > 0.0) {
      r.quadrature = g.tol ? fisher_quadrature_ncx2(d, theta, *g.tol) : fisher_quadrature_ncx2(d, theta);
    }
    if (o.samples > 0) {
      RngStream rng(g.seed, i);
      r.mc = fisher_mc_ncx2(d, theta, o.samples, rng);
    }
    const double slack = 1e-9;
    std::vector<std::string> issues;
    if (r.quadrature < r.bounds.lower - slack) issues.emplace_back("below_lower");
    if (r.quadrature > r.bounds.tightest_upper() + slack) issues.emplace_back("above_upper");
    r.status = issues.empty() ? "ok" : "violation:" + issues.front();
    if (issues.size() > 1) r.status += "," + issues.back();
  });
  if (g.json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json j{{"d", r.d},
                       {"theta", r.theta},
                       {"lower", r.bounds.lower},
                       {"quadrature", r.quadrature},
                       {"upper", r.bounds.upper},
                       {"upper_sharp", r.bounds.upper_sharp},
                       {"upper_alt", r.bounds.upper_alt},
                       {"status", r.status}};
      if (r.mc) {
        j["mc_score"] = r.mc->score_squared.estimate;
        j["mc_score_se"] = r.mc->score_squared.stderr_;
        j["mc_rician"] = r.mc->rician.estimate;
        j["mc_rician_se"] = r.mc->rician.stderr_;
      }
      arr.push_back(j);
    }
    internal::emit(g, out, arr.dump(2) + "\n");
    return kOk;
  }
  std::ostringstream table;
  const std::size_t w = 15;
  for (const char* h : {"d", "theta", "lower", "quadrature", "mc_score", "mc_score_se",
                        "mc_rician", "mc_rician_se", "upper", "upper_sharp", "upper_alt"}) {
    table << internal::pad(h, w);
  }
  table << "status\n";
  for (const auto& r : rows) {
    table << internal::pad(std::to_string(r.d), w) << internal::pad(internal::num(r.theta), w)
          << internal::pad(internal::num(r.bounds.lower), w)
          << internal::pad(internal::num(r.quadrature), w);
    if (r.mc) {
      for (double v : {r.mc->score_squared.estimate, r.mc->score_squared.stderr_,
                       r.mc->rician.estimate, r.mc->rician.stderr_}) {
        table << internal::pad(internal::num(v), w);
      }
    } else {
      for (int i = 0; i < 4; ++i) table << internal::pad("-", w);
    }
    table << internal::pad(internal::num(r.bounds.upper), w)
          << internal::pad(internal::num(r.bounds.upper_sharp), w)
          << internal::pad(internal::num(r.bounds.upper_alt), w) << r.status << '\n';
  }
  internal::emit(g, out, table.str());
  return kOk;
}

struct RenyiOptions {
  std::string family = "ncx2";
  std::string method;
  double alpha = 2.0;
  int d = 0;
  double theta_v = 0.0;
  double theta_w = 0.0;
  std::optional<std::int64_t> n_syn;
  std::int64_t samples = 100000;
  std::string profile = "ci";
  std::optional<int> steps;
  std::optional<int> runs;
  std::string output_map = "exp";
};

inline int cmd_renyi(const RenyiOptions& o, const GlobalOptions& g, std::ostream& out) {
  if (o.family != "ncx2") throw UsageError("renyi: only --family ncx2 is supported");
  if (o.method == "finite-n" && !o.n_syn) throw UsageError("renyi: finite-n requires --n-syn");
  if ((o.method == "quadrature" || o.method == "monte-carlo") && o.n_syn) {
    throw UsageError("renyi: --n-syn applies to finite-n and variational only");
  }
  require(o.d >= 1, "renyi: --d must be >= 1");
  SweepRow row;
  row.experiment = "renyi";
  row.alpha = o.alpha;
  row.C = std::max(o.theta_v, o.theta_w);
  row.d = o.d;
  row.delta = std::abs(o.theta_v - o.theta_w);
  row.n_syn = o.n_syn;
  row.theta_v = o.theta_v;
  row.theta_w = o.theta_w;
  row.seed = g.seed;
  if (o.method == "quadrature") {
    row.method = "quadrature";
    row.value = g.tol ? renyi_ncx2_quadrature(o.alpha, o.d, o.theta_v, o.theta_w, *g.tol)
                      : renyi_ncx2_quadrature(o.alpha, o.d, o.theta_v, o.theta_w);
  } else if (o.method == "finite-n") {
    row.method = "finite_n_quadrature";
    row.value = g.tol ? renyi_finite_n_k1(o.alpha, o.d, *o.n_syn, o.theta_v, o.theta_w, *g.tol)
                      : renyi_finite_n_k1(o.alpha, o.d, *o.n_syn, o.theta_v, o.theta_w);
  } else if (o.method == "monte-carlo") {
    RngStream rng(g.seed);
    const auto mc = renyi_mc_ncx2(o.alpha, o.d, o.theta_v, o.theta_w, o.samples, rng);
    row.method = "monte_carlo";
    row.value = mc.estimate;
    row.stderr_ = mc.stderr_;
    row.notes = "samples=" + std::to_string(o.samples);
  } else {
    TrainConfig cfg = profile_config(o.profile == "full" ? Profile::kFull : Profile::kCi);
    if (o.steps) cfg.steps = *o.steps;
    if (o.runs) cfg.n_runs = *o.runs;
    cfg.output = o.output_map == "softplus" ? OutputMap::kSoftplus : OutputMap::kExp;
    cfg.alpha = o.alpha;
    cfg.seed = g.seed;
    cfg.validate();
    row = variational_row("renyi", row.C, row.delta, o.d, o.n_syn, o.theta_v, o.theta_w, cfg);
  }
  if (g.json) {
    nlohmann::json j{{"method", row.method},     {"value", internal::json_number(row.value)},
                     {"alpha", row.alpha},       {"d", row.d},
                     {"theta_v", row.theta_v},   {"theta_w", row.theta_w},
                     {"seed", row.seed},         {"notes", row.notes}};
    j["n_syn"] = row.n_syn ? nlohmann::json(*row.n_syn) : nlohmann::json("inf");
    j["stderr"] = row.stderr_ ? nlohmann::json(*row.stderr_) : nlohmann::json(nullptr);
    internal::emit(g, out, j.dump(2) + "\n");
    return kOk;
  }
  std::ostringstream text;
  text << "method  " << row.method << "\nvalue   " << internal::num(row.value) << '\n';
  if (row.stderr_) text << "stderr  " << internal::num(*row.stderr_) << '\n';
  if (!row.notes.empty()) text << "notes   " << row.notes << '\n';
  internal::emit(g, out, text.str());
  return kOk;
}

struct PriorOptions {
  PriorWorkParams params;
};

inline int cmd_prior(const PriorOptions& o, const GlobalOptions& g, std::ostream& out) {
  const auto threshold = prior_no_amplification_threshold(o.params);
  const auto conv = prior_rdp_conversion(o.params);
  const double post = rdp_gaussian(o.params.alpha, o.params.delta_sens);
  nlohmann::json j{{"shift", o.params.shift()},
                   {"threshold", threshold.threshold},
                   {"threshold_amplified", threshold.amplified},
                   {"amplified", conv.amplified},
                   {"l_alpha", conv.l_alpha},
                   {"post_processing", post}};
  j["z_minus"] = conv.z_minus ? nlohmann::json(*conv.z_minus) : nlohmann::json(nullptr);
  j["z_plus"] = conv.z_plus ? nlohmann::json(*conv.z_plus) : nlohmann::json(nullptr);
  if (g.json) {
    internal::emit(g, out, j.dump(2) + "\n");
    return kOk;
  }
  std::ostringstream text;
  text << "shift            " << internal::num(o.params.shift()) << '\n'
       << "threshold        " << internal::num(threshold.threshold)
       << (threshold.amplified ? "  (Delta above: amplification possible)\n"
                               : "  (Delta below: no amplification)\n")
       << "amplified        " << (conv.amplified ? "true" : "false") << '\n'
       << "l_alpha          " << internal::num(conv.l_alpha) << '\n'
       << "post_processing  " << internal::num(post) << '\n';
  if (conv.z_plus) {
    text << "z_minus          " << internal::num(*conv.z_minus) << '\n'
         << "z_plus           " << internal::num(*conv.z_plus) << '\n';
  }
  internal::emit(g, out, text.str());
  return kOk;
}

struct CounterexampleOptions {
  double a = 0.5;
  double sigma = 1.0;
  double delta = 5.0;
};

inline int cmd_counterexample(const CounterexampleOptions& o, const GlobalOptions& g,
                              std::ostream& out) {
  const auto c = counterexample_demo(o.a, o.sigma, o.delta);
  const auto local = counterexample_demo(o.a, o.sigma, 0.01);
  nlohmann::json j{{"fisher_cauchy", c.fisher_cauchy},
                   {"fisher_gauss", c.fisher_gauss},
                   {"renyi2_cauchy", c.renyi2_cauchy},
                   {"renyi2_gauss", c.renyi2_gauss},
                   {"fisher_ratio", c.fisher_cauchy / c.fisher_gauss},
                   {"renyi2_ratio_at_0.01", local.renyi2_cauchy / local.renyi2_gauss},
                   {"fisher_larger_renyi_smaller",
                    c.fisher_cauchy > c.fisher_gauss && c.renyi2_cauchy < c.renyi2_gauss}};
  if (g.json) {
    internal::emit(g, out, j.dump(2) + "\n");
    return kOk;
  }
  std::ostringstream text;
  for (const auto& [key, value] : j.items()) {
    text << internal::pad(key, 30)
         << (value.is_boolean() ? (value.get<bool>() ? "true" : "false")
                                : internal::num(value.get<double>()))
         << '\n';
  }
  internal::emit(g, out, text.str());
  return kOk;
}

struct FiguresOptions {
  std::string which;
  std::string profile = "ci";
};

inline int cmd_figures(const FiguresOptions& o, const GlobalOptions& g, std::ostream& out) {
  if (g.out.empty()) throw UsageError("figures: --out DIR is required");
  const std::filesystem::path dir(g.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw UsageError("figures: cannot create directory '" + g.out + "'");
  }
  const Profile profile = o.profile == "full" ? Profile::kFull : Profile::kCi;
  const Figure fig = build_figure(o.which, profile, g.seed, g.threads);
  const std::string description =
      "figures;which=" + o.which + ";profile=" + o.profile + ";seed=" + std::to_string(g.seed);
  std::ostringstream csv;
  write_csv(csv, fig.rows,
            {{"synthdp_version", std::string(kVersion)},
             {"config_hash", hex64(fnv1a64(description))},
             {"seed", std::to_string(g.seed)},
             {"command", description}});
  internal::write_file(dir / (o.which + ".csv"), csv.str());
  internal::write_file(dir / (o.which + ".svg"), render_svg(fig.chart));
  out << (dir / (o.which + ".csv")).string() << '\n' << (dir / (o.which + ".svg")).string() << '\n';
  return kOk;
}

inline int cmd_sweep(const std::string& config_path, const GlobalOptions& g, std::ostream& out) {
  std::ifstream in(config_path);
  if (!in) throw UsageError("sweep: cannot read '" + config_path + "'");
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("sweep: invalid JSON: ") + e.what());
  }
  const auto specs = parse_config(root);
  const SweepResult rows = run_sweep(specs, g.threads, g.tol);
  std::string seeds;
  for (const auto& s : specs) seeds += (seeds.empty() ? "" : ",") + std::to_string(s.seed);
  std::ostringstream csv;
  write_csv(csv, rows,
            {{"synthdp_version", std::string(kVersion)},
             {"config_hash", hex64(fnv1a64(root.dump()))},
             {"seed", seeds}});
  internal::emit(g, out, csv.str());
  return kOk;
}

struct VerifyOptions {
  std::string path;
  bool stochastic = false;
};

inline int cmd_verify(const VerifyOptions& o, const GlobalOptions& g, std::ostream& out) {
  std::ifstream in(o.path);
  if (!in) throw UsageError("verify: cannot read '" + o.path + "'");
  const CsvFile file = read_csv(in);
  std::vector<std::optional<double>> fresh(file.rows.size());
  parallel_for(file.rows.size(), g.threads,
               [&](std::size_t i) { fresh[i] = recompute_row(file.rows[i], o.stochastic); });
  std::size_t checked = 0, skipped = 0, mismatches = 0;
  std::ostringstream text;
  for (std::size_t i = 0; i < file.rows.size(); ++i) {
    if (!fresh[i]) {
      ++skipped;
      continue;
    }
    ++checked;
    const double stored = file.rows[i].value;
    const bool same = (std::isnan(stored) && std::isnan(*fresh[i])) || stored == *fresh[i] ||
                      std::abs(stored - *fresh[i]) <= 1e-12 * std::max(1.0, std::abs(stored));
    if (!same) {
      ++mismatches;
      text << "mismatch row " << i + 1 << " (" << file.rows[i].method
           << "): stored=" << format_number(stored) << " recomputed=" << format_number(*fresh[i])
           << '\n';
    }
  }
  text << "checked=" << checked << " skipped=" << skipped << " mismatches=" << mismatches << '\n';
  internal::emit(g, out, text.str());
  return mismatches == 0 ? kOk : kNumerical;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Privacy accounting for synthetic data released from a perturbed linear generator",
               "synthdp"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  GlobalOptions g;
  app.add_option("--seed", g.seed, "Base seed for stochastic methods")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--tol", g.tol, "Quadrature tolerance override")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output file (figures: output directory)");
  app.add_flag("--json", g.json, "JSON output");

  BoundOptions bound;
  auto* bound_cmd = app.add_subcommand("bound", "Privacy bounds for the perturbed generator");
  bound_cmd->add_option("--alpha", bound.params.alpha, "Renyi order")->capture_default_str();
  bound_cmd->add_option("--C", bound.params.C, "Norm cap")->required();
  bound_cmd->add_option("--d", bound.params.d, "Model width")->required();
  bound_cmd->add_option("--k", bound.params.k, "Record dimension")->capture_default_str();
  bound_cmd->add_option("--delta", bound.params.delta_sens, "Sensitivity")->required();
  bound_cmd->add_option("--method", bound.method, "Bound")
      ->check(CLI::IsMember({"post", "local", "global", "prior", "min"}))
      ->capture_default_str();
  bound_cmd->add_option("--norm-w", bound.norm_w, "||w|| for the local band");
  bound_cmd->add_option("--n-syn", bound.n_syn, "Released records (default unlimited)");
  bound_cmd->add_option("--c-prime", bound.c_prime, "Constant of the earlier analysis");

  FisherOptions fisher;
  auto* fisher_cmd = app.add_subcommand("fisher", "Fisher information of the Gram statistic");
  fisher_cmd->add_option("--d", fisher.d, "Degrees of freedom")->required();
  fisher_cmd->add_option("--theta", fisher.theta, "Amplitudes")->required();
  fisher_cmd->add_option("--samples", fisher.samples, "Monte Carlo draws, 0 to skip")
      ->capture_default_str();

  RenyiOptions renyi;
  auto* renyi_cmd = app.add_subcommand("renyi", "One-shot Renyi divergence");
  renyi_cmd->add_option("--family", renyi.family)->capture_default_str();
  renyi_cmd->add_option("--method", renyi.method)
      ->required()
      ->check(CLI::IsMember({"quadrature", "finite-n", "variational", "monte-carlo"}));
  renyi_cmd->add_option("--alpha", renyi.alpha)->capture_default_str();
  renyi_cmd->add_option("--d", renyi.d)->required();
  renyi_cmd->add_option("--theta-v", renyi.theta_v)->required();
  renyi_cmd->add_option("--theta-w", renyi.theta_w)->required();
  renyi_cmd->add_option("--n-syn", renyi.n_syn);
  renyi_cmd->add_option("--samples", renyi.samples)->capture_default_str();
  renyi_cmd->add_option("--profile", renyi.profile)
      ->check(CLI::IsMember({"ci", "full"}))
      ->capture_default_str();
  renyi_cmd->add_option("--steps", renyi.steps);
  renyi_cmd->add_option("--runs", renyi.runs);
  renyi_cmd->add_option("--output-map", renyi.output_map)
      ->check(CLI::IsMember({"exp", "softplus"}))
      ->capture_default_str();

  PriorOptions prior;
  auto* prior_cmd = app.add_subcommand("prior", "Conversion of the earlier trade-off bound");
  prior_cmd->add_option("--c-prime", prior.params.c_prime)->capture_default_str();
  prior_cmd->add_option("--n-syn", prior.params.n_syn)->capture_default_str();
  prior_cmd->add_option("--d", prior.params.d)->required();
  prior_cmd->add_option("--k", prior.params.k)->capture_default_str();
  prior_cmd->add_option("--delta", prior.params.delta_sens)->capture_default_str();
  prior_cmd->add_option("--alpha", prior.params.alpha)->capture_default_str();

  CounterexampleOptions counter;
  auto* counter_cmd =
      app.add_subcommand("counterexample", "Cauchy against Gaussian location families");
  counter_cmd->add_option("--a", counter.a)->capture_default_str();
  counter_cmd->add_option("--sigma", counter.sigma)->capture_default_str();
  counter_cmd->add_option("--delta", counter.delta)->capture_default_str();

  FiguresOptions figures;
  auto* figures_cmd = app.add_subcommand("figures", "Write a figure table and chart");
  figures_cmd->add_option("--which", figures.which)
      ->required()
      ->check(CLI::IsMember(figure_names()));
  figures_cmd->add_option("--profile", figures.profile)
      ->check(CLI::IsMember({"ci", "full"}))
      ->capture_default_str();

  std::string config_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run the experiments of a JSON config");
  sweep_cmd->add_option("config", config_path, "JSON config")->required();

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Recompute the rows of a result CSV");
  verify_cmd->add_option("csv", verify.path, "Result CSV")->required();
  verify_cmd->add_flag("--stochastic", verify.stochastic, "Also re-run seeded stochastic rows");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (bound_cmd->parsed()) return cmd_bound(bound, g, out);
    if (fisher_cmd->parsed()) return cmd_fisher(fisher, g, out);
    if (renyi_cmd->parsed()) return cmd_renyi(renyi, g, out);
    if (prior_cmd->parsed()) return cmd_prior(prior, g, out);
    if (counter_cmd->parsed()) return cmd_counterexample(counter, g, out);
    if (figures_cmd->parsed()) return cmd_figures(figures, g, out);
    if (sweep_cmd->parsed()) return cmd_sweep(config_path, g, out);
    if (verify_cmd->parsed()) return cmd_verify(verify, g, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}

}  // namespace synthdp::cli

#endif  // SYNTHDP_CLI_APP_HPP_

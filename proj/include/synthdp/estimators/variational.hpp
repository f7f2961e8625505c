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

// Neural estimator of D_alpha(P || Q) from samples, through the convex
// conjugate variational formula
//   D_alpha = alpha * sup_{g < 0} F(g) + log(alpha) + 1,
//   F(g) = E_Q[g] + (1 / (alpha - 1)) log E_P[|g|^{(alpha - 1) / alpha}],
// with g a two-layer network and F maximised by Adam on fresh minibatches.

#ifndef SYNTHDP_ESTIMATORS_VARIATIONAL_HPP_
#define SYNTHDP_ESTIMATORS_VARIATIONAL_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "synthdp/mathkit/errors.hpp"
#include "synthdp/mathkit/parallel.hpp"
#include "synthdp/mathkit/rng.hpp"

namespace synthdp {

// Map from the output logit z to |g| > 0, so that g = -|g| < 0.
enum class OutputMap {
  kSoftplus,  // |g| = softplus(z) + 1e-6
  kExp        // |g| = e^z
};

struct TrainConfig {
  int steps = 20000;
  int batch = 512;
  double lr = 1e-3;
  int hidden = 64;
  int eval_every = 100;
  int patience = 10;
  int n_eval = 50000;
  int n_final = 50000;
  int n_runs = 10;
  double alpha = 2.0;
  std::uint64_t seed = 0;
  OutputMap output = OutputMap::kExp;

  // Reduced profile for continuous integration.
  static TrainConfig ci() {
    TrainConfig cfg;
    cfg.steps = 5000;
    cfg.n_runs = 3;
    cfg.n_eval = 10000;
    cfg.n_final = 10000;
    return cfg;
  }

  void validate() const {
    require(steps > 0 && batch > 1 && hidden > 0 && eval_every > 0 && patience > 0 &&
                n_eval > 1 && n_final > 1 && n_runs > 0,
            "TrainConfig: all counts must be positive");
    require(lr > 0.0 && std::isfinite(lr), "TrainConfig: lr must be > 0");
    require(alpha > 1.0 && std::isfinite(alpha), "TrainConfig: alpha must be > 1");
  }
};

enum class EstimateMethod { kVariational, kQuadrature, kFiniteNQuadrature, kMonteCarlo };

inline const char* to_string(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::kVariational: return "variational";
    case EstimateMethod::kQuadrature: return "quadrature";
    case EstimateMethod::kFiniteNQuadrature: return "finite_n_quadrature";
    case EstimateMethod::kMonteCarlo: return "mc";
  }
  return "unknown";
}

struct DivergenceEstimate {
  double mean = 0.0;
  double std = 0.0;  // across runs; 0 for quadrature
  int runs = 1;
  int failed_runs = 0;
  EstimateMethod method = EstimateMethod::kQuadrature;
  std::string inputs;
  std::vector<double> per_run;
};

// Writes one draw of dimension input_dim into `out`.
using Sampler = std::function<void(RngStream&, std::span<double>)>;

namespace internal {

inline double softplus_scalar(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Elementwise softplus and logistic functions in vectorised form.
inline Eigen::ArrayXXd softplus_array(const Eigen::ArrayXXd& x) {
  return x.max(0.0) + (-x.abs()).exp().log1p();
}

inline Eigen::ArrayXXd sigmoid_array(const Eigen::ArrayXXd& x) {
  const Eigen::ArrayXXd e = (-x.abs()).exp();
  return (x >= 0.0).select(1.0 / (1.0 + e), e / (1.0 + e));
}

}  // namespace internal

// g(x) = -m(w2 . softplus(W1 x~ + b1) + b2) with m from OutputMap, where x~
// is the input standardised by fixed per-feature shift and scale.
class Mlp {
 public:
  static constexpr double kOffset = 1e-6;

  Mlp(int input_dim, int hidden, OutputMap output = OutputMap::kExp)
      : output_(output),
        input_dim_(input_dim),
        hidden_(hidden),
        params_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(hidden) * (input_dim + 2) + 1)),
        shift_(Eigen::VectorXd::Zero(input_dim)),
        scale_(Eigen::VectorXd::Ones(input_dim)) {
    require(input_dim > 0 && hidden > 0, "Mlp: dimensions must be positive");
  }

  OutputMap output_map() const { return output_; }
  int input_dim() const { return input_dim_; }

  // |g| as a function of the logit, and its derivative.
  double magnitude(double z) const {
    return output_ == OutputMap::kExp ? std::exp(z) : internal::softplus_scalar(z) + kOffset;
  }
  double magnitude_slope(double z) const {
    return output_ == OutputMap::kExp ? std::exp(z) : internal::sigmoid(z);
  }
  int hidden() const { return hidden_; }
  Eigen::VectorXd& params() { return params_; }
  const Eigen::VectorXd& params() const { return params_; }

  void set_standardization(Eigen::VectorXd shift, Eigen::VectorXd scale) {
    shift_ = std::move(shift);
    scale_ = std::move(scale);
  }

  void initialize(RngStream& rng) {
    const double in_scale = 1.0 / std::sqrt(static_cast<double>(input_dim_));
    const double out_scale = 1.0 / std::sqrt(static_cast<double>(hidden_));
    for (Eigen::Index i = 0; i < w1_size(); ++i) params_[i] = in_scale * rng.normal();
    for (int i = 0; i < hidden_; ++i) params_[w1_size() + i] = 0.5 * rng.normal();
    for (int i = 0; i < hidden_; ++i) params_[w1_size() + hidden_ + i] = out_scale * rng.normal();
    params_[params_.size() - 1] = 0.0;
  }

  // Intermediate values of one forward pass, kept for backpropagation.
  struct Pass {
    Eigen::MatrixXd xs;  // standardised inputs
    Eigen::MatrixXd h;   // hidden pre-activations
    Eigen::MatrixXd a;   // hidden activations
    Eigen::RowVectorXd z;
  };

  Pass run(const Eigen::MatrixXd& x) const {
    Pass pass;
    pass.xs = standardize(x);
    pass.h = (w1() * pass.xs).colwise() + b1();
    pass.a = internal::softplus_array(pass.h.array()).matrix();
    pass.z = w2().transpose() * pass.a;
    pass.z.array() += b2();
    return pass;
  }

  // Pre-activation of the output unit for each column of x.
  Eigen::RowVectorXd logits(const Eigen::MatrixXd& x) const { return run(x).z; }

  // Network output g(x) < 0 for each column of x.
  Eigen::RowVectorXd forward(const Eigen::MatrixXd& x) const {
    return logits(x).unaryExpr([this](double z) { return -magnitude(z); });
  }

  // Gradient of sum_j dz[j] * z_j with respect to params.
  Eigen::VectorXd backprop(const Pass& pass, const Eigen::RowVectorXd& dz) const {
    const Eigen::MatrixXd dh =
        ((w2() * dz).array() * internal::sigmoid_array(pass.h.array())).matrix();
    Eigen::VectorXd grad(params_.size());
    Eigen::Map<Eigen::MatrixXd>(grad.data(), hidden_, input_dim_) = dh * pass.xs.transpose();
    grad.segment(w1_size(), hidden_) = dh.rowwise().sum();
    grad.segment(w1_size() + hidden_, hidden_) = pass.a * dz.transpose();
    grad[grad.size() - 1] = dz.sum();
    return grad;
  }

 private:
  Eigen::Index w1_size() const { return static_cast<Eigen::Index>(hidden_) * input_dim_; }
  Eigen::Map<const Eigen::MatrixXd> w1() const {
    return {params_.data(), hidden_, input_dim_};
  }
  Eigen::Map<const Eigen::VectorXd> b1() const { return {params_.data() + w1_size(), hidden_}; }
  Eigen::Map<const Eigen::VectorXd> w2() const {
    return {params_.data() + w1_size() + hidden_, hidden_};
  }
  double b2() const { return params_[params_.size() - 1]; }

  Eigen::MatrixXd standardize(const Eigen::MatrixXd& x) const {
    require(x.rows() == input_dim_, "Mlp: input dimension mismatch");
    return (x.colwise() - shift_).array().colwise() / scale_.array();
  }

  OutputMap output_;
  int input_dim_;
  int hidden_;
  Eigen::VectorXd params_;
  Eigen::VectorXd shift_;
  Eigen::VectorXd scale_;
};

// F(g) on samples from P (columns of xp) and Q (columns of xq); optionally
// its gradient with respect to the network parameters.
inline double variational_objective(const Mlp& net, const Eigen::MatrixXd& xp,
                                    const Eigen::MatrixXd& xq, double alpha,
                                    Eigen::VectorXd* grad = nullptr) {
  const double beta = (alpha - 1.0) / alpha;
  const Mlp::Pass pass_q = net.run(xq);
  const Mlp::Pass pass_p = net.run(xp);
  const Eigen::RowVectorXd& zq = pass_q.z;
  const Eigen::RowVectorXd& zp = pass_p.z;
  const double mq = static_cast<double>(xq.cols());
  const double mp = static_cast<double>(xp.cols());
  double q_term = 0.0;
  for (Eigen::Index j = 0; j < zq.size(); ++j) {
    q_term -= net.magnitude(zq[j]);
  }
  q_term /= mq;
  Eigen::RowVectorXd h(zp.size());
  double mean_pow = 0.0;
  for (Eigen::Index i = 0; i < zp.size(); ++i) {
    h[i] = net.magnitude(zp[i]);
    mean_pow += std::pow(h[i], beta);
  }
  mean_pow /= mp;
  const double value = q_term + std::log(mean_pow) / (alpha - 1.0);
  if (grad) {
    const Eigen::RowVectorXd dq =
        zq.unaryExpr([&](double z) { return -net.magnitude_slope(z) / mq; });
    Eigen::RowVectorXd dp(zp.size());
    for (Eigen::Index i = 0; i < zp.size(); ++i) {
      dp[i] = std::pow(h[i], beta - 1.0) * net.magnitude_slope(zp[i]) / (alpha * mp * mean_pow);
    }
    *grad = net.backprop(pass_q, dq) + net.backprop(pass_p, dp);
  }
  return value;
}

// Adam ascent on a flat parameter vector.
class Adam {
 public:
  Adam(Eigen::Index size, double lr) : lr_(lr), m_(Eigen::VectorXd::Zero(size)),
                                       v_(Eigen::VectorXd::Zero(size)) {}

  void ascend(Eigen::VectorXd& params, const Eigen::VectorXd& grad) {
    ++t_;
    m_ = kBeta1 * m_ + (1.0 - kBeta1) * grad;
    v_ = kBeta2 * v_ + (1.0 - kBeta2) * grad.cwiseProduct(grad);
    const double c1 = 1.0 - std::pow(kBeta1, t_);
    const double c2 = 1.0 - std::pow(kBeta2, t_);
    params.array() += lr_ * (m_.array() / c1) / ((v_.array() / c2).sqrt() + kEps);
  }

 private:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEps = 1e-8;
  double lr_;
  int t_ = 0;
  Eigen::VectorXd m_;
  Eigen::VectorXd v_;
};

namespace internal {

inline Eigen::MatrixXd draw_batch(const Sampler& sampler, int input_dim, int count,
                                  RngStream& rng) {
  Eigen::MatrixXd out(input_dim, count);
  for (int j = 0; j < count; ++j) {
    sampler(rng, std::span<double>(out.col(j).data(), static_cast<std::size_t>(input_dim)));
  }
  return out;
}

struct RunOutcome {
  double value = 0.0;
  bool ok = false;
};

inline RunOutcome variational_run(const Sampler& sample_p, const Sampler& sample_q,
                                  int input_dim, const TrainConfig& cfg, RngStream rng) {
  RngStream init_rng = rng.split(1), train_rng = rng.split(2), eval_rng = rng.split(3),
            final_rng = rng.split(4);
  Mlp net(input_dim, cfg.hidden, cfg.output);
  {
    // Standardise with a pilot sample pooled from both distributions.
    const int pilot = 2048;
    Eigen::MatrixXd pooled(input_dim, 2 * pilot);
    pooled << draw_batch(sample_p, input_dim, pilot, init_rng),
        draw_batch(sample_q, input_dim, pilot, init_rng);
    const Eigen::VectorXd mean = pooled.rowwise().mean();
    const Eigen::VectorXd sd =
        ((pooled.colwise() - mean).array().square().rowwise().sum() / (2.0 * pilot - 1.0))
            .sqrt()
            .max(1e-12)
            .matrix();
    net.set_standardization(mean, sd);
  }
  net.initialize(init_rng);
  Adam adam(net.params().size(), cfg.lr);
  Eigen::VectorXd grad;
  Eigen::VectorXd best_params = net.params();
  double best_score = -std::numeric_limits<double>::infinity();
  int stale = 0;
  for (int step = 1; step <= cfg.steps; ++step) {
    const Eigen::MatrixXd xp = draw_batch(sample_p, input_dim, cfg.batch, train_rng);
    const Eigen::MatrixXd xq = draw_batch(sample_q, input_dim, cfg.batch, train_rng);
    const double f = variational_objective(net, xp, xq, cfg.alpha, &grad);
    if (!std::isfinite(f) || !grad.allFinite()) return {};
    adam.ascend(net.params(), grad);
    if (step % cfg.eval_every == 0) {
      const double score = variational_objective(
          net, draw_batch(sample_p, input_dim, cfg.n_eval, eval_rng),
          draw_batch(sample_q, input_dim, cfg.n_eval, eval_rng), cfg.alpha);
      if (!std::isfinite(score)) return {};
      if (score > best_score) {
        best_score = score;
        best_params = net.params();
        stale = 0;
      } else if (++stale >= cfg.patience) {
        break;
      }
    }
  }
  if (std::isfinite(best_score)) net.params() = best_params;
  const double f = variational_objective(
      net, draw_batch(sample_p, input_dim, cfg.n_final, final_rng),
      draw_batch(sample_q, input_dim, cfg.n_final, final_rng), cfg.alpha);
  const double value = cfg.alpha * f + std::log(cfg.alpha) + 1.0;
  if (!std::isfinite(value)) return {};
  return {value, true};
}

}  // namespace internal

// Runs cfg.n_runs independent trainings (run r uses stream split r of the
// seed stream) on up to `threads` threads and reports mean and standard
// deviation over the successful runs.
inline DivergenceEstimate variational_renyi(const Sampler& sample_p, const Sampler& sample_q,
                                            int input_dim, const TrainConfig& cfg,
                                            int threads = 1) {
  cfg.validate();
  require(input_dim > 0, "variational_renyi: input_dim must be positive");
  const RngStream root(cfg.seed, 0x7661726961ULL);
  std::vector<internal::RunOutcome> outcomes(static_cast<std::size_t>(cfg.n_runs));
  parallel_for(outcomes.size(), threads, [&](std::size_t r) {
    outcomes[r] = internal::variational_run(sample_p, sample_q, input_dim, cfg, root.split(r));
  });
  DivergenceEstimate est;
  est.method = EstimateMethod::kVariational;
  for (const auto& o : outcomes) {
    if (o.ok) {
      est.per_run.push_back(o.value);
    } else {
      ++est.failed_runs;
    }
  }
  est.runs = static_cast<int>(est.per_run.size());
  if (2 * est.runs < cfg.n_runs || est.runs == 0) {
    std::ostringstream msg;
    msg << "variational_renyi: only " << est.runs << " of " << cfg.n_runs
        << " runs produced a finite estimate";
    throw NumericalFailure(msg.str());
  }
  double sum = 0.0;
  for (double v : est.per_run) sum += v;
  est.mean = sum / est.runs;
  double sq = 0.0;
  for (double v : est.per_run) sq += (v - est.mean) * (v - est.mean);
  est.std = est.runs > 1 ? std::sqrt(sq / (est.runs - 1)) : 0.0;
  std::ostringstream inputs;
  inputs << "alpha=" << cfg.alpha << " steps=" << cfg.steps << " batch=" << cfg.batch
         << " hidden=" << cfg.hidden << " runs=" << cfg.n_runs << " seed=" << cfg.seed;
  est.inputs = inputs.str();
  return est;
}

}  // namespace synthdp

#endif  // SYNTHDP_ESTIMATORS_VARIATIONAL_HPP_

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

// The release mechanism of a linear generator: parameters v (or w) in
// R^{d x k} are perturbed by a standard Gaussian matrix N, and n_syn synthetic
// records are produced as Z (v + N) with Z an n_syn x d standard Gaussian
// matrix. Noise scales are normalised to one; callers with other scales divide
// the sensitivity and norm cap by the noise scale first.

#ifndef SYNTHDP_DISTRIBUTIONS_GENERATOR_HPP_
#define SYNTHDP_DISTRIBUTIONS_GENERATOR_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "synthdp/distributions/ncx2.hpp"
#include "synthdp/mathkit/errors.hpp"
#include "synthdp/mathkit/rng.hpp"

namespace synthdp {

using Matrix = Eigen::MatrixXd;

// Number of released records; nullopt stands for the unlimited-release limit.
using SyntheticCount = std::optional<std::int64_t>;

struct PrivacyParams {
  double alpha = 2.0;       // Renyi order, > 1
  double delta_sens = 0.0;  // sensitivity ||v - w||_F
  double C = 1.0;           // norm cap on ||v||_F, ||w||_F
  int d = 1;                // model width
  int k = 1;                // record dimension
  SyntheticCount n_syn;     // empty: unlimited release

  void validate() const {
    require(std::isfinite(alpha) && alpha > 1.0, "PrivacyParams: alpha must be > 1");
    require(std::isfinite(C) && C > 0.0, "PrivacyParams: C must be > 0");
    require(std::isfinite(delta_sens) && delta_sens >= 0.0,
            "PrivacyParams: delta must be >= 0");
    require(delta_sens <= 2.0 * C,
            "PrivacyParams: delta cannot exceed 2C (both norms are capped by C)");
    require(d >= 1 && k >= 1, "PrivacyParams: d and k must be >= 1");
    require(d >= k, "PrivacyParams: requires d >= k");
    require(!n_syn || *n_syn >= 1, "PrivacyParams: n_syn must be >= 1");
  }
};

enum class Which { kV, kW };

class GeneratorPair {
 public:
  GeneratorPair(Matrix v, Matrix w) : v_(std::move(v)), w_(std::move(w)) {
    require(v_.rows() == w_.rows() && v_.cols() == w_.cols(),
            "GeneratorPair: v and w must have the same shape");
    require(v_.cols() >= 1 && v_.rows() >= v_.cols(),
            "GeneratorPair: requires d >= k >= 1");
  }

  // Collinear k = 1 pair with ||v|| = norm_v, ||w|| = norm_w along e_1.
  static GeneratorPair collinear(int d, double norm_v, double norm_w) {
    require(d >= 1, "GeneratorPair::collinear: d must be >= 1");
    Matrix v = Matrix::Zero(d, 1), w = Matrix::Zero(d, 1);
    v(0, 0) = norm_v;
    w(0, 0) = norm_w;
    return GeneratorPair(std::move(v), std::move(w));
  }

  int d() const { return static_cast<int>(v_.rows()); }
  int k() const { return static_cast<int>(v_.cols()); }
  const Matrix& v() const { return v_; }
  const Matrix& w() const { return w_; }
  const Matrix& param(Which which) const { return which == Which::kV ? v_ : w_; }

  double sensitivity() const { return (v_ - w_).norm(); }

  // Checks the pair against declared privacy parameters.
  void check_against(const PrivacyParams& params, double tol = 1e-9) const {
    std::ostringstream msg;
    if (d() != params.d || k() != params.k) {
      msg << "GeneratorPair: shape " << d() << "x" << k()
          << " does not match params " << params.d << "x" << params.k;
      throw DomainError(msg.str());
    }
    if (std::abs(sensitivity() - params.delta_sens) > tol) {
      msg << "GeneratorPair: ||v - w||_F = " << sensitivity()
          << " differs from declared sensitivity " << params.delta_sens;
      throw DomainError(msg.str());
    }
    if (std::max(v_.norm(), w_.norm()) > params.C + tol) {
      msg << "GeneratorPair: parameter norm exceeds C = " << params.C;
      throw DomainError(msg.str());
    }
  }

 private:
  Matrix v_;
  Matrix w_;
};

inline Matrix standard_normal_matrix(Eigen::Index rows, Eigen::Index cols,
                                     RngStream& rng) {
  Matrix m(rows, cols);
  // Column-major fill order is part of the reproducibility contract.
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.normal();
  }
  return m;
}

// Perturbed parameter M = param + N.
inline Matrix sample_perturbed(const GeneratorPair& pair, RngStream& rng,
                               Which which) {
  const Matrix& param = pair.param(which);
  return param + standard_normal_matrix(param.rows(), param.cols(), rng);
}

// One release Z (param + N): N is drawn first, then Z.
inline Matrix sample_release(const GeneratorPair& pair, std::int64_t n_syn,
                             RngStream& rng, Which which) {
  require(n_syn >= 1, "sample_release: n_syn must be >= 1");
  const Matrix perturbed = sample_perturbed(pair, rng, which);
  const Matrix z = standard_normal_matrix(n_syn, pair.d(), rng);
  return z * perturbed;
}

// Gram statistic (param + N)^T (param + N), a non-central Wishart draw. For
// k = 1 this is chi^2_d(||param||^2) and is sampled through sample_ncx2, so the
// two samplers consume the stream identically.
inline Matrix sample_gram(const GeneratorPair& pair, RngStream& rng, Which which) {
  if (pair.k() == 1) {
    Matrix out(1, 1);
    out(0, 0) = sample_ncx2(NoncentralChiSq(pair.d(), pair.param(which).norm()), rng);
    return out;
  }
  const Matrix perturbed = sample_perturbed(pair, rng, which);
  return perturbed.transpose() * perturbed;
}

// ||Z (param + N)||^2 for k = 1, drawn through its exact representation
// ||param + N||^2 * chi^2_{n_syn}: given N, Z (param + N) is N(0, ||param+N||^2 I).
inline double sample_release_sq_norm_k1(const GeneratorPair& pair,
                                        std::int64_t n_syn, RngStream& rng,
                                        Which which) {
  require(pair.k() == 1, "sample_release_sq_norm_k1: requires k = 1");
  require(n_syn >= 1, "sample_release_sq_norm_k1: n_syn must be >= 1");
  const double gram = sample_gram(pair, rng, which)(0, 0);
  return gram * rng.chi_squared(static_cast<double>(n_syn));
}

}  // namespace synthdp

#endif  // SYNTHDP_DISTRIBUTIONS_GENERATOR_HPP_

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

// Orthogonal alignment of generator parameters and the Fisher bound along
// the aligned path between them (k > 1).

#ifndef SYNTHDP_ACCOUNTANT_PROCRUSTES_HPP_
#define SYNTHDP_ACCOUNTANT_PROCRUSTES_HPP_

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "synthdp/distributions/generator.hpp"
#include "synthdp/mathkit/errors.hpp"

namespace synthdp {

namespace internal {

inline void require_same_shape(const Matrix& v, const Matrix& w, const char* where) {
  require(v.rows() == w.rows() && v.cols() == w.cols() && v.size() > 0, where);
}

// Sum of singular values of w v^T (its nuclear norm), from the k x k
// symmetric matrix (v^T v)^{1/2} (w^T w) (v^T v)^{1/2}.
inline double alignment_trace(const Matrix& v, const Matrix& w) {
  const Matrix gram_v = v.transpose() * v;
  const Matrix gram_w = w.transpose() * w;
  Eigen::SelfAdjointEigenSolver<Matrix> eig_v(gram_v);
  const Eigen::VectorXd root = eig_v.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix sqrt_v = eig_v.eigenvectors() * root.asDiagonal() * eig_v.eigenvectors().transpose();
  Matrix similar = sqrt_v * gram_w * sqrt_v;
  similar = 0.5 * (similar + similar.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(similar, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
}

}  // namespace internal

// inf over U in O(d) of ||v - U w||_F.
inline double procrustes_min_distance(const Matrix& v, const Matrix& w) {
  internal::require_same_shape(v, w, "procrustes_min_distance: shapes must match");
  const double sq = v.squaredNorm() + w.squaredNorm() - 2.0 * internal::alignment_trace(v, w);
  return std::sqrt(std::max(0.0, sq));
}

// An orthogonal U attaining the infimum above.
inline Matrix procrustes_alignment(const Matrix& v, const Matrix& w) {
  internal::require_same_shape(v, w, "procrustes_alignment: shapes must match");
  const Matrix cross = w * v.transpose();
  Eigen::JacobiSVD<Matrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixV() * svd.matrixU().transpose();
}

// Fisher bound at position t of the aligned path v_t = (1 - t) v + t U w:
//   D^2 * 2||v_t||^2 / (2||v_t||^2 + floor(d/k) - 3),
// where D is the Procrustes distance. ||v_t||^2 is computed from the
// alignment trace, without forming U.
inline double wishart_path_fisher_bound(const Matrix& v, const Matrix& w, double t) {
  internal::require_same_shape(v, w, "wishart_path_fisher_bound: shapes must match");
  require(t >= 0.0 && t <= 1.0, "wishart_path_fisher_bound: t must lie in [0, 1]");
  const int blocks = static_cast<int>(v.rows() / v.cols());
  require(blocks >= 3, "wishart_path_fisher_bound: requires floor(d / k) >= 3");
  const double trace = internal::alignment_trace(v, w);
  const double nv = v.squaredNorm();
  const double nw = w.squaredNorm();
  const double dist2 = std::max(0.0, nv + nw - 2.0 * trace);
  const double path2 = std::max(
      0.0, (1.0 - t) * (1.0 - t) * nv + t * t * nw + 2.0 * t * (1.0 - t) * trace);
  if (path2 == 0.0) return 0.0;
  return dist2 * 2.0 * path2 / (2.0 * path2 + blocks - 3.0);
}

}  // namespace synthdp

#endif  // SYNTHDP_ACCOUNTANT_PROCRUSTES_HPP_

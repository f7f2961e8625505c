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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "synthdp/distributions/finite_n.hpp"
#include "synthdp/distributions/generator.hpp"
#include "synthdp/distributions/ncx2.hpp"
#include "synthdp/mathkit/errors.hpp"
#include "synthdp/mathkit/quadrature.hpp"

namespace synthdp {
namespace {

struct Moments {
  double mean = 0;
  double stderr_ = 0;
};

Moments moments(const std::vector<double>& xs) {
  double sum = 0, sq = 0;
  for (double x : xs) sum += x;
  const double mean = sum / xs.size();
  for (double x : xs) sq += (x - mean) * (x - mean);
  return {mean, std::sqrt(sq / (xs.size() - 1) / xs.size())};
}

// Poisson(theta^2 / 2) mixture of central chi^2_{d + 2j} densities.
double poisson_mixture_pdf(int d, double theta, double x, int terms) {
  const double lambda = theta * theta / 2;
  double total = 0;
  for (int j = 0; j < terms; ++j) {
    const double log_weight = -lambda + j * std::log(lambda) - std::lgamma(j + 1.0);
    const double dof = d + 2.0 * j;
    const double log_chi = (dof / 2 - 1) * std::log(x) - x / 2 -
                           dof / 2 * std::numbers::ln2 - std::lgamma(dof / 2);
    total += std::exp(log_weight + log_chi);
  }
  return total;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double worst = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    worst = std::max(worst, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return worst;
}

TEST(Ncx2LogPdf, CentralExponentialCase) {
  EXPECT_NEAR(ncx2_log_pdf(NoncentralChiSq(2, 0), 2), std::log(std::exp(-1.0) / 2), 1e-14);
  EXPECT_NEAR(ncx2_log_pdf(NoncentralChiSq(2, 0), 2), -1.69315, 1e-5);
}

TEST(Ncx2LogPdf, MatchesPoissonMixture) {
  const double series = poisson_mixture_pdf(4, 1, 3, 60);
  EXPECT_NEAR(ncx2_log_pdf(NoncentralChiSq(4, 1), 3), std::log(series), 1e-9);
  for (int d : {1, 2, 3, 5, 10, 30}) {
    for (double theta : {0.1, 0.7, 1.5, 3.0}) {
      for (double x : {0.05, 0.8, 4.0, 15.0, 40.0}) {
        const double oracle = std::log(poisson_mixture_pdf(d, theta, x, 200));
        EXPECT_NEAR(ncx2_log_pdf(NoncentralChiSq(d, theta), x), oracle,
                    1e-9 * std::max(1.0, std::abs(oracle)))
            << d << " " << theta << " " << x;
      }
    }
  }
}

TEST(Ncx2LogPdf, LargeArgumentsStayFinite) {
  const double lp = ncx2_log_pdf(NoncentralChiSq(50, 100), 1e4);
  EXPECT_TRUE(std::isfinite(lp));
  EXPECT_LT(lp, 0);
}

TEST(Ncx2LogPdf, RejectsNonPositiveArgument) {
  EXPECT_THROW(ncx2_log_pdf(NoncentralChiSq(3, 1), 0), DomainError);
  EXPECT_THROW(ncx2_log_pdf(NoncentralChiSq(3, 1), -1), DomainError);
  EXPECT_THROW(NoncentralChiSq(0, 1), DomainError);
  EXPECT_THROW(NoncentralChiSq(3, -1), DomainError);
}

TEST(Ncx2LogPdf, NormalizationAndMean) {
  for (auto [d, theta] : {std::pair{10, 2.0}, {1, 0.5}, {4, 1.0}, {50, 4.0}}) {
    const NoncentralChiSq dist(d, theta);
    const TailHint hint{dist.mean(), std::sqrt(dist.variance())};
    const auto mass = integrate_to_infinity(
        [&](double x) { return x > 0 ? std::exp(ncx2_log_pdf(dist, x)) : 0.0; }, 0,
        1e-12, hint);
    EXPECT_NEAR(mass.value, 1.0, 1e-8) << d;
    const auto mean = integrate_to_infinity(
        [&](double x) { return x > 0 ? x * std::exp(ncx2_log_pdf(dist, x)) : 0.0; }, 0,
        1e-12, hint);
    EXPECT_NEAR(mean.value / dist.mean(), 1.0, 1e-6) << d;
  }
}

TEST(Ncx2Score, BesselExample) {
  const auto s = ncx2_score(NoncentralChiSq(4, 1), 4);
  EXPECT_FALSE(s.at_boundary);
  // -1 + 2 I_2(2) / I_1(2) from the power series of both Bessel functions.
  auto series = [](int order, double x) {
    double term = std::pow(x / 2, order) / std::tgamma(order + 1.0), sum = term;
    for (int k = 1; k < 40; ++k) {
      term *= (x * x / 4) / (k * (k + order));
      sum += term;
    }
    return sum;
  };
  EXPECT_NEAR(s.value, -1 + 2 * series(2, 2) / series(1, 2), 1e-13);
  EXPECT_NEAR(s.value, -0.13375, 1e-5);
}

TEST(Ncx2Score, MatchesFiniteDifferences) {
  const double h = 1e-5;
  for (auto [d, theta, x] : {std::tuple{10, 2.0, 12.0}, {1, 0.8, 2.0}, {4, 1.0, 4.0},
                            {30, 3.0, 50.0}, {3, 0.2, 0.3}}) {
    const double fd = (ncx2_log_pdf(NoncentralChiSq(d, theta + h), x) -
                       ncx2_log_pdf(NoncentralChiSq(d, theta - h), x)) /
                      (2 * h);
    EXPECT_NEAR(ncx2_score(NoncentralChiSq(d, theta), x).value, fd, 1e-6) << d;
  }
}

TEST(Ncx2Score, BoundaryIsFlaggedNotThrown) {
  const auto s = ncx2_score(NoncentralChiSq(5, 0), 3);
  EXPECT_TRUE(s.at_boundary);
  EXPECT_EQ(s.value, 0.0);
}

TEST(Ncx2Score, MeanZeroAndInformationIdentity) {
  const NoncentralChiSq dist(6, 1.5);
  RngStream rng(11);
  std::vector<double> score, identity;
  const double h = 1e-4;
  for (int i = 0; i < 100000; ++i) {
    const double x = sample_ncx2(dist, rng);
    const double s = ncx2_score(dist, x).value;
    const double second = (ncx2_log_pdf(NoncentralChiSq(6, 1.5 + h), x) -
                           2 * ncx2_log_pdf(dist, x) +
                           ncx2_log_pdf(NoncentralChiSq(6, 1.5 - h), x)) /
                          (h * h);
    score.push_back(s);
    identity.push_back(s * s + second);
  }
  const auto m = moments(score);
  EXPECT_LT(std::abs(m.mean), 3 * m.stderr_);
  const auto id = moments(identity);
  EXPECT_LT(std::abs(id.mean), 3 * id.stderr_);
}

TEST(SampleNcx2, MeansMatch) {
  for (auto [d, theta] : {std::pair{1, 0.0}, {5, 2.0}, {10, 0.5}}) {
    const NoncentralChiSq dist(d, theta);
    RngStream rng(3, d);
    std::vector<double> xs(100000);
    for (double& x : xs) {
      x = sample_ncx2(dist, rng);
      ASSERT_GE(x, 0);
    }
    const auto m = moments(xs);
    EXPECT_LT(std::abs(m.mean - dist.mean()), 3 * m.stderr_) << d;
  }
}

TEST(SampleNcx2, KolmogorovSmirnovAgainstQuadratureCdf) {
  const NoncentralChiSq dist(4, 1);
  RngStream rng(5);
  std::vector<double> xs(100000);
  for (double& x : xs) x = sample_ncx2(dist, rng);
  std::sort(xs.begin(), xs.end());
  auto pdf = [&](double x) { return x > 0 ? std::exp(ncx2_log_pdf(dist, x)) : 0.0; };
  double cdf = 0, prev = 0, worst = 0;
  const double n = xs.size();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] > prev) cdf += adaptive_quadrature(pdf, prev, xs[i], 1e-13).value;
    prev = xs[i];
    worst = std::max({worst, std::abs(cdf - i / n), std::abs(cdf - (i + 1) / n)});
  }
  EXPECT_LE(worst, 0.01);
}

TEST(SampleRelease, ScalarProductHasUnitVariance) {
  const auto pair = GeneratorPair::collinear(1, 0, 0);
  RngStream rng(8);
  std::vector<double> sq(100000);
  for (double& x : sq) {
    const double y = sample_release(pair, 1, rng, Which::kV)(0, 0);
    x = y * y;
  }
  const auto m = moments(sq);
  EXPECT_LT(std::abs(m.mean - 1), 3 * m.stderr_);
}

TEST(SampleRelease, SquaredNormMoment) {
  const auto pair = GeneratorPair::collinear(6, 2, 1);
  RngStream rng(9);
  const int n_syn = 5;
  std::vector<double> xs(40000), ys(40000);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = sample_release(pair, n_syn, rng, Which::kV).squaredNorm() / n_syn;
    ys[i] = sample_release_sq_norm_k1(pair, n_syn, rng, Which::kV) / n_syn;
  }
  const auto m = moments(xs);
  EXPECT_LT(std::abs(m.mean - 10), 3 * m.stderr_);
  const auto my = moments(ys);
  EXPECT_LT(std::abs(my.mean - 10), 3 * my.stderr_);
  EXPECT_LT(ks_two_sample(xs, ys), 0.02);
}

TEST(SampleRelease, MultiColumnSecondMoment) {
  Matrix v(4, 2);
  v << 1, 0.5, -0.3, 2, 0, 0, 0.7, -1;
  const GeneratorPair pair(v, Matrix::Zero(4, 2));
  RngStream rng(10);
  const int n_syn = 3, reps = 40000;
  std::vector<std::vector<double>> entries(4);
  for (int r = 0; r < reps; ++r) {
    const Matrix out = sample_release(pair, n_syn, rng, Which::kV);
    const Matrix m = out.transpose() * out / n_syn;
    for (int e = 0; e < 4; ++e) entries[e].push_back(m(e % 2, e / 2));
  }
  const Matrix expected = v.transpose() * v + 4 * Matrix::Identity(2, 2);
  for (int e = 0; e < 4; ++e) {
    const auto m = moments(entries[e]);
    EXPECT_LT(std::abs(m.mean - expected(e % 2, e / 2)), 3.5 * m.stderr_) << e;
  }
}

TEST(SampleGram, ScalarCaseFollowsChiSquarePath) {
  const auto pair = GeneratorPair::collinear(7, 1.3, 0.4);
  RngStream a(21), b(21);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(sample_gram(pair, a, Which::kV)(0, 0),
              sample_ncx2(NoncentralChiSq(7, 1.3), b));
    EXPECT_EQ(sample_gram(pair, a, Which::kW)(0, 0),
              sample_ncx2(NoncentralChiSq(7, 0.4), b));
  }
}

TEST(SampleGram, ScalarCaseMatchesDirectConstructionInDistribution) {
  Matrix v = Matrix::Zero(5, 1);
  v(1, 0) = 1.0;
  v(3, 0) = -1.0;
  const GeneratorPair pair(v, v);
  RngStream a(1), b(2);
  std::vector<double> gram(100000), direct(100000);
  for (std::size_t i = 0; i < gram.size(); ++i) {
    gram[i] = sample_gram(pair, a, Which::kV)(0, 0);
    direct[i] = sample_perturbed(pair, b, Which::kV).squaredNorm();
  }
  EXPECT_LT(ks_two_sample(gram, direct), 0.02);
}

TEST(SampleGram, WishartMeanAndPositivity) {
  Matrix v(5, 3);
  v.setZero();
  v(0, 0) = 1;
  v(1, 1) = -2;
  v(2, 2) = 0.5;
  v(3, 0) = 0.5;
  const GeneratorPair pair(v, v);
  RngStream rng(31);
  const int reps = 50000;
  std::vector<std::vector<double>> entries(9);
  for (int r = 0; r < reps; ++r) {
    const Matrix g = sample_gram(pair, rng, Which::kV);
    ASSERT_LT((g - g.transpose()).norm(), 1e-12);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(g, Eigen::EigenvaluesOnly);
    ASSERT_GE(eig.eigenvalues().minCoeff(), -1e-12);
    for (int e = 0; e < 9; ++e) entries[e].push_back(g(e % 3, e / 3));
  }
  const Matrix expected = v.transpose() * v + 5 * Matrix::Identity(3, 3);
  for (int e = 0; e < 9; ++e) {
    const auto m = moments(entries[e]);
    EXPECT_LT(std::abs(m.mean - expected(e % 3, e / 3)), 3.5 * m.stderr_) << e;
  }
}

TEST(Samplers, DeterministicGivenStream) {
  const auto pair = GeneratorPair::collinear(4, 1, 0.5);
  RngStream a(77, 3), b(77, 3);
  EXPECT_EQ(sample_release(pair, 6, a, Which::kW), sample_release(pair, 6, b, Which::kW));
  EXPECT_EQ(sample_release_sq_norm_k1(pair, 9, a, Which::kV),
            sample_release_sq_norm_k1(pair, 9, b, Which::kV));
}

TEST(GeneratorPair, ChecksDeclaredParameters) {
  const auto pair = GeneratorPair::collinear(10, 2, 1);
  PrivacyParams params{2.0, 1.0, 2.0, 10, 1, std::nullopt};
  EXPECT_NO_THROW(pair.check_against(params));
  params.delta_sens = 0.5;
  EXPECT_THROW(pair.check_against(params), DomainError);
  params.delta_sens = 1.0;
  params.C = 1.5;
  EXPECT_THROW(pair.check_against(params), DomainError);
  EXPECT_THROW(GeneratorPair(Matrix::Zero(2, 3), Matrix::Zero(2, 3)), DomainError);
  EXPECT_THROW((PrivacyParams{1.0, 0.5, 1.0, 3, 1, std::nullopt}.validate()), DomainError);
  EXPECT_THROW((PrivacyParams{2.0, 2.5, 1.0, 3, 1, std::nullopt}.validate()), DomainError);
}

// Integral over s in (0, inf) of g(s) f(s) through the substitution s = e^u.
template <typename F>
double integrate_positive(F&& f, double center) {
  auto log_f = [&](double u) {
    const double v = f(std::exp(u));
    return v > 0 ? std::log(v) + u : -std::numeric_limits<double>::infinity();
  };
  double total = 0;
  for (double lo = std::log(center) - 70; lo < std::log(center) + 8; lo += 1.0) {
    total += adaptive_quadrature([&](double u) { return std::exp(log_f(u)); }, lo, lo + 1,
                                 QuadratureOptions{1e-14, 1e-11, 4000})
                 .value;
  }
  return total;
}

TEST(FiniteN, NormalizationAndMean) {
  const int d = 5, n = 3;
  const double theta = 1;
  auto pdf = [&](double s) { return finite_n_pdf_k1(d, n, theta, s); };
  EXPECT_NEAR(integrate_positive(pdf, n * 6.0), 1.0, 1e-6);
  const double mean = integrate_positive([&](double s) { return s * pdf(s); }, n * 6.0);
  EXPECT_NEAR(mean / (n * (d + theta * theta)), 1.0, 1e-4);
}

TEST(FiniteN, NormalizationAcrossShapes) {
  for (auto [d, n, theta] : {std::tuple{1, 1, 0.0}, {2, 64, 1.0}, {10, 512, 2.0},
                            {50, 7, 4.0}}) {
    auto pdf = [&](double s) { return finite_n_pdf_k1(d, n, theta, s); };
    const double center = n * (d + theta * theta);
    EXPECT_NEAR(integrate_positive(pdf, center), 1.0, 1e-6) << d << " " << n;
  }
}

TEST(FiniteN, ProductOfChiSquaresAgainstHistogram) {
  RngStream rng(12);
  const int samples = 200000;
  const std::vector<double> edges{0.01, 0.05, 0.1, 0.3, 0.6, 1.0, 2.0, 4.0, 8.0};
  std::vector<int> counts(edges.size() - 1, 0);
  for (int i = 0; i < samples; ++i) {
    const double s = rng.chi_squared(1) * rng.chi_squared(1);
    for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
      if (s >= edges[b] && s < edges[b + 1]) ++counts[b];
    }
  }
  for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
    const double p = adaptive_quadrature(
                         [](double s) { return finite_n_pdf_k1(1, 1, 0, s); }, edges[b],
                         edges[b + 1], 1e-10)
                         .value;
    const double freq = double(counts[b]) / samples;
    EXPECT_LT(std::abs(freq - p), 4 * std::sqrt(p * (1 - p) / samples)) << b;
  }
}

TEST(FiniteN, RenyiInvariantUnderRescaling) {
  const int d = 5, n = 4;
  const double alpha = 2;
  auto tilted = [&](double scale) {
    return [=](double t) {
      const double s = t * scale;
      const double lv = finite_n_log_pdf_k1(d, n, 2, s);
      const double lw = finite_n_log_pdf_k1(d, n, 1, s);
      return std::exp(alpha * lv + (1 - alpha) * lw + std::log(scale));
    };
  };
  const double raw = integrate_positive(tilted(1.0), n * 9.0);
  const double rescaled = integrate_positive(tilted(double(n)), 9.0);
  EXPECT_NEAR(std::log(raw), std::log(rescaled), 1e-8);
  EXPECT_GT(std::log(raw), 0);
}

TEST(FiniteN, RejectsBadInputs) {
  EXPECT_THROW(finite_n_pdf_k1(0, 1, 1, 1), DomainError);
  EXPECT_THROW(finite_n_pdf_k1(3, 0, 1, 1), DomainError);
  EXPECT_THROW(finite_n_pdf_k1(3, 2, 1, 0), DomainError);
}

}  // namespace
}  // namespace synthdp

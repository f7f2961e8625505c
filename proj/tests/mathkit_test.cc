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

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>
#include "gtest/gtest.h"
#include "synthdp/mathkit/errors.hpp"
#include "synthdp/mathkit/peaked.hpp"
#include "synthdp/mathkit/quadrature.hpp"
#include "synthdp/mathkit/rng.hpp"
#include "synthdp/mathkit/special.hpp"

namespace synthdp {
namespace {

// Power series of I_nu(x) in long double; test oracle only.
long double bessel_i_series(long double nu, long double x, int terms) {
  long double term = std::pow(x / 2, nu) / std::tgamma(nu + 1);
  long double sum = term;
  for (int k = 1; k < terms; ++k) {
    term *= (x * x / 4) / (k * (k + nu));
    sum += term;
  }
  return sum;
}

// log I_{1/2}(x) = log(sqrt(2/(pi x)) sinh x), stable for large x.
double log_bessel_i_half(double x) {
  return x + std::log1p(-std::exp(-2 * x)) - std::numbers::ln2 +
         0.5 * std::log(2 / (std::numbers::pi * x));
}

// log I_{3/2}(x) = log(sqrt(2/(pi x)) (cosh x - sinh x / x)).
double log_bessel_i_three_halves(double x) {
  const double e = std::exp(-2 * x);
  return x - std::numbers::ln2 + std::log((1 + e) - (1 - e) / x) +
         0.5 * std::log(2 / (std::numbers::pi * x));
}

TEST(LogBesselI, SeriesConstantTerm) { EXPECT_EQ(log_bessel_i(0, 0), 0.0); }

TEST(LogBesselI, HalfIntegerClosedForm) {
  const double expected = std::log(std::sqrt(2 / std::numbers::pi) * std::sinh(1.0));
  EXPECT_NEAR(log_bessel_i(0.5, 1), expected, 1e-14);
  EXPECT_NEAR(expected, -0.06429, 1e-4);
}

TEST(LogBesselI, OrderZeroAtOne) {
  const double oracle = std::log(static_cast<double>(bessel_i_series(0, 1, 30)));
  EXPECT_NEAR(log_bessel_i(0, 1), oracle, 1e-14);
  EXPECT_NEAR(oracle, 0.23590, 1e-4);
}

TEST(LogBesselI, MatchesBoostOnGrid) {
  for (double nu : {0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.5, 9.0, 24.0, 49.0}) {
    for (double x : {1e-3, 0.1, 0.9, 2.5, 10.0, 29.9, 30.1, 45.0, 80.0, 150.0,
                     400.0, 690.0}) {
      const double oracle = std::log(boost::math::cyl_bessel_i(nu, x));
      const double got = log_bessel_i(nu, x);
      EXPECT_NEAR(got, oracle, 1e-12 * std::max(1.0, std::abs(oracle)))
          << "nu=" << nu << " x=" << x;
    }
  }
}

TEST(LogBesselI, LargeArgumentsAgainstClosedForms) {
  for (double x : {50.0, 1e3, 1e4, 1e5, 1e6}) {
    EXPECT_NEAR(log_bessel_i(0.5, x), log_bessel_i_half(x),
                1e-12 * std::abs(log_bessel_i_half(x)))
        << x;
    EXPECT_NEAR(log_bessel_i(1.5, x), log_bessel_i_three_halves(x),
                1e-12 * std::abs(log_bessel_i_three_halves(x)))
        << x;
  }
}

TEST(LogBesselI, RejectsNegativeInputs) {
  EXPECT_THROW(log_bessel_i(-1, 1), DomainError);
  EXPECT_THROW(log_bessel_i(1, -1), DomainError);
  EXPECT_THROW(log_bessel_i(NAN, 1), DomainError);
}

TEST(BesselQuotient, Examples) {
  EXPECT_EQ(bessel_quotient(0, 0), 0.0);
  EXPECT_EQ(bessel_quotient(3.5, 0), 0.0);
  const double oracle = static_cast<double>(bessel_i_series(1, 1, 40) /
                                            bessel_i_series(0, 1, 40));
  EXPECT_NEAR(bessel_quotient(0, 1), oracle, 1e-15);
  EXPECT_NEAR(oracle, 0.44639, 1e-5);
  const double far = bessel_quotient(2, 1000);
  EXPECT_GT(far, 0.99);
  EXPECT_LT(far, 1.0);
  // Large-argument expansion: 1 - (2 nu + 1) / (2 x) + O(x^-2).
  EXPECT_NEAR(far, 1 - 5.0 / 2000, 1e-5);
  EXPECT_THROW(bessel_quotient(-0.5, 1), DomainError);
}

TEST(BesselQuotient, MatchesBoostRatio) {
  for (double nu : {0.0, 0.5, 1.0, 3.0, 7.5, 24.0}) {
    for (double x : {0.01, 0.5, 3.0, 20.0, 100.0, 600.0}) {
      const double oracle = boost::math::cyl_bessel_i(nu + 1, x) /
                            boost::math::cyl_bessel_i(nu, x);
      EXPECT_NEAR(bessel_quotient(nu, x), oracle, 1e-13 * oracle)
          << "nu=" << nu << " x=" << x;
    }
  }
}

TEST(Scalar0F1, Examples) {
  EXPECT_EQ(scalar_0f1(2.5, 0), 0.0);
  // 0F1(;1;1) = sum 1/(k!)^2 = I_0(2).
  long double series = 0, term = 1;
  for (int k = 0; k < 40; ++k) {
    if (k > 0) term /= static_cast<long double>(k) * k;
    series += term;
  }
  EXPECT_NEAR(scalar_0f1(1, 1), std::log(static_cast<double>(series)), 1e-13);
  EXPECT_NEAR(scalar_0f1(1, 1), 0.82399, 1e-5);
  // 0F1(;3/2;x^2/4) = sinh(x)/x and 0F1(;1/2;x^2/4) = cosh(x) at x = 1.
  EXPECT_NEAR(scalar_0f1(1.5, 0.25), std::log(std::sinh(1.0)), 1e-13);
  EXPECT_NEAR(scalar_0f1(0.5, 0.25), std::log(std::cosh(1.0)), 1e-13);
  EXPECT_NEAR(scalar_0f1(0.5, 0.25), 0.43378, 1e-5);
  EXPECT_THROW(scalar_0f1(1, -1), DomainError);
  EXPECT_THROW(scalar_0f1(0, 1), DomainError);
}

TEST(Scalar0F1, MatchesDirectSeries) {
  for (double b : {0.3, 0.7, 1.0, 2.5, 6.0}) {
    for (double x : {0.01, 0.5, 3.0, 40.0}) {
      long double term = 1, sum = 1;
      for (int k = 1; k < 300; ++k) {
        term *= x / ((b + k - 1) * static_cast<long double>(k));
        sum += term;
      }
      EXPECT_NEAR(scalar_0f1(b, x), std::log(static_cast<double>(sum)),
                  1e-10 * std::max(1.0, std::log(static_cast<double>(sum))))
          << b << " " << x;
    }
  }
}

TEST(Normal, CdfAndQuantile) {
  EXPECT_EQ(std_normal_cdf(0), 0.5);
  EXPECT_EQ(std_normal_quantile(0.5), 0.0);
  // erf series oracle: erf(z) = 2/sqrt(pi) sum (-1)^k z^{2k+1} / (k! (2k+1)).
  const long double z = 1 / std::sqrt(2.0L);
  long double erf = 0, power = z, fact = 1;
  for (int k = 0; k < 40; ++k) {
    if (k > 0) fact *= k;
    erf += ((k % 2) ? -1 : 1) * power / (fact * (2 * k + 1));
    power *= z * z;
  }
  erf *= 2 / std::sqrt(std::numbers::pi_v<long double>);
  EXPECT_NEAR(std_normal_cdf(1), static_cast<double>(0.5L + 0.5L * erf), 1e-15);
  EXPECT_NEAR(std_normal_cdf(1), 0.841345, 1e-6);
  EXPECT_THROW(std_normal_quantile(0), DomainError);
  EXPECT_THROW(std_normal_quantile(1), DomainError);
}

TEST(Normal, QuantileInvertsCdf) {
  // Recovering z from p = cdf(z) is ill-conditioned once p rounds near 1.
  for (double z = -8; z <= 3; z += 0.137) {
    const double p = std_normal_cdf(z);
    EXPECT_NEAR(std_normal_quantile(p), z, 1e-12 * std::max(1.0, std::abs(z))) << z;
  }
  for (double p : {1e-300, 1e-100, 1e-20, 1e-5, 0.02425, 0.3, 0.975, 1 - 1e-12}) {
    const double z = std_normal_quantile(p);
    const double back = p < 0.5 ? std_normal_cdf(z) : 1 - std_normal_cdf(-z);
    EXPECT_NEAR(back / p, 1.0, 1e-12) << p;
  }
}

TEST(Quadrature, Polynomial) {
  const auto r = adaptive_quadrature([](double x) { return x * x; }, 0, 1, 1e-12);
  EXPECT_NEAR(r.value, 1.0 / 3, 1e-14);
  EXPECT_LE(r.abs_error_estimate, 1e-12);
  EXPECT_GT(r.evaluations, 0u);
}

TEST(Quadrature, GaussianMomentIntegralAndElementaryBound) {
  // int_0^1 e^{t^2} dt = sum_k 1 / (k! (2k+1)).
  long double oracle = 0, fact = 1;
  for (int k = 0; k < 30; ++k) {
    if (k > 0) fact *= k;
    oracle += 1 / (fact * (2 * k + 1));
  }
  const auto r = adaptive_quadrature([](double t) { return std::exp(t * t); }, 0, 1, 1e-13);
  EXPECT_NEAR(r.value, static_cast<double>(oracle), 1e-13);
  EXPECT_NEAR(r.value, 1.46265, 1e-5);
  EXPECT_LE(r.value, std::numbers::e - 1);
}

TEST(Quadrature, SemiInfiniteChiSquaredNormalises) {
  auto density = [](double x) { return 0.25 * x * std::exp(-x / 2); };  // chi^2_4
  EXPECT_NEAR(integrate_to_infinity(density, 0, 1e-12).value, 1, 1e-11);
  EXPECT_NEAR(integrate_to_infinity(density, 0, 1e-12, TailHint{4, 3}).value, 1, 1e-11);
}

TEST(Quadrature, BitReproducible) {
  auto f = [](double x) { return std::sin(30 * x) * std::exp(-x); };
  const auto a = adaptive_quadrature(f, 0, 5, 1e-12);
  const auto b = adaptive_quadrature(f, 0, 5, 1e-12);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.abs_error_estimate, b.abs_error_estimate);
  EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(Quadrature, BudgetExhaustionReportsPartial) {
  QuadratureOptions options;
  options.abs_tol = 1e-15;
  options.max_subdivisions = 3;
  auto f = [](double x) { return 1 / std::sqrt(std::abs(x - 0.3)); };
  try {
    adaptive_quadrature(f, 0, 1, options);
    FAIL() << "expected QuadratureFailure";
  } catch (const QuadratureFailure& e) {
    EXPECT_GT(e.result().evaluations, 0u);
    EXPECT_GT(e.partial(), 0.0);
  }
}

TEST(Quadrature, RejectsBadRange) {
  EXPECT_THROW(adaptive_quadrature([](double) { return 1.0; }, 1, 0, 1e-8), DomainError);
}

TEST(Bisect, Examples) {
  EXPECT_NEAR(bisect([](double x) { return x - 1; }, 0, 2, 1e-12), 1, 1e-12);
  const double target = std_normal_cdf(1.0);
  EXPECT_NEAR(bisect([&](double x) { return std_normal_cdf(x) - target; }, 0, 3, 1e-12),
              1.0, 1e-10);
  EXPECT_THROW(bisect([](double x) { return x * x; }, 1, 2, 1e-12), DomainError);
}

TEST(PeakedWindow, GaussianMassFound) {
  auto log_f = [](double u) { return -0.5 * (u - 40) * (u - 40) / 1e-4; };
  const auto window = find_log_window(log_f, 0.0, 0.002, 75.0, 100000);
  EXPECT_LT(window.lo, 40 - 0.1);
  EXPECT_GT(window.hi, 40 + 0.1);
  const auto r = integrate_window([&](double u) { return std::exp(log_f(u) - window.peak_log); },
                                  window, 1e-12);
  EXPECT_NEAR(r.value, std::sqrt(2 * std::numbers::pi * 1e-4), 1e-12);
}

// Property tests over random grids drawn from a fixed stream.

TEST(BesselProperties, RiccatiIdentity) {
  RngStream rng(7, 1);
  const double h = 1e-5;
  for (int i = 0; i < 400; ++i) {
    const double d = 1 + 49 * rng.uniform();
    const double x = 0.01 + (50 - 0.01) * rng.uniform();
    const double r = bessel_quotient(d, x);
    const double deriv = (bessel_quotient(d, x + h) - bessel_quotient(d, x - h)) / (2 * h);
    EXPECT_NEAR(deriv, 1 - (2 * d + 1) / x * r - r * r, 1e-6) << d << " " << x;
  }
}

TEST(BesselProperties, QuotientBound) {
  RngStream rng(7, 2);
  for (int i = 0; i < 1000; ++i) {
    const double nu = 60 * rng.uniform();
    const double x = std::exp(-5 + 12 * rng.uniform());
    const double r = bessel_quotient(nu, x);
    EXPECT_GE(r, 0.0);
    EXPECT_LT(r, 1.0);
    EXPECT_LE(r, x / (2 * (nu + 1)) * (1 + 1e-14));
  }
}

TEST(BesselProperties, SandwichForConsecutiveOrders) {
  RngStream rng(7, 3);
  for (int i = 0; i < 1000; ++i) {
    // I_nu / I_{nu-1} = R_{nu-1}; orders below 1 would need I of negative order.
    const double nu = 1 + 40 * rng.uniform();
    const double x = std::exp(-4 + 10 * rng.uniform());
    const double ratio = bessel_quotient(nu - 1, x);
    const double lower = x / (nu + std::sqrt(nu * nu + x * x));
    const double a = nu - 0.5;
    const double upper = x / (a + std::sqrt(a * a + x * x));
    EXPECT_GE(ratio, lower * (1 - 1e-13)) << nu << " " << x;
    EXPECT_LE(ratio, upper * (1 + 1e-13)) << nu << " " << x;
  }
}

TEST(BesselProperties, GrowthRatioBound) {
  RngStream rng(7, 4);
  for (int i = 0; i < 1000; ++i) {
    const double d = 40 * rng.uniform();
    const double x = std::exp(-3 + 8 * rng.uniform());
    const double y = x * (1 + 5 * rng.uniform());
    EXPECT_LE(log_bessel_i(d, y) - log_bessel_i(d, x),
              d * std::log(y / x) + (y - x) + 1e-10)
        << d << " " << x << " " << y;
  }
}

TEST(BesselProperties, QuotientDifferenceLemma) {
  RngStream rng(7, 5);
  for (int i = 0; i < 1000; ++i) {
    const double d = 2 + 1e-9 + 48 * rng.uniform();
    const double x = std::exp(-3 + 9 * rng.uniform());
    const double prev = bessel_quotient(d - 1, x);
    const double lhs = x * (prev - bessel_quotient(d, x));
    EXPECT_LE(lhs, x * prev / (x * prev + d - 0.5) + 1e-12) << d << " " << x;
  }
}

TEST(Rng, ReproducibleAndSplittable) {
  RngStream a(42, 3), b(42, 3), c(42, 4);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    differs |= (x != c.next());
  }
  EXPECT_TRUE(differs);
  RngStream parent(9, 0);
  EXPECT_NE(parent.split(1).next(), parent.split(2).next());
  EXPECT_EQ(parent.split(1).next(), RngStream(9, 0).split(1).next());
}

TEST(Rng, MomentsOfVariates) {
  RngStream rng(1, 0);
  const int n = 200000;
  double sum = 0, sum2 = 0, chi = 0, uni = 0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
    chi += rng.chi_squared(3.0);
    uni += rng.uniform();
  }
  EXPECT_NEAR(sum / n, 0, 4 / std::sqrt(n));
  EXPECT_NEAR(sum2 / n, 1, 4 * std::sqrt(2.0 / n));
  EXPECT_NEAR(chi / n, 3, 4 * std::sqrt(6.0 / n));
  EXPECT_NEAR(uni / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
}

TEST(Rng, CrossStreamCorrelationSmall) {
  RngStream a(5, 0), b(5, 1);
  const int n = 100000;
  double cross = 0;
  for (int i = 0; i < n; ++i) cross += a.normal() * b.normal();
  EXPECT_NEAR(cross / n, 0, 4 / std::sqrt(n));
}

}  // namespace
}  // namespace synthdp

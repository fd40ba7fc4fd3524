#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ifrlag/fit.hpp"
#include "support/oracles.hpp"

namespace ifrlag {
namespace {

using V = std::vector<double>;

V bell_curve(std::size_t n, double peak, double centre, double width) {
  V v(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double z = (static_cast<double>(j) - centre) / width;
    v[j] = peak * std::exp(-0.5 * z * z);
  }
  return v;
}

V scaled_shift(const V& i, int a, int b, double r) {
  V out = shift_expectation(i, LagDistribution::uniform(a, b)).values;
  for (double& x : out) x *= r;
  return out;
}

TEST(ClosedFormIfr, Examples) {
  EXPECT_EQ(closed_form_ifr(V{3, 4}, V{0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(closed_form_ifr(V{3, 4, 7}, V{3, 4, 7}), 1.0);
  EXPECT_DOUBLE_EQ(closed_form_ifr(V{100, 200}, V{1, 2}), 0.01);
}

TEST(ClosedFormIfr, MayBeNegative) { EXPECT_LT(closed_form_ifr(V{1, 0}, V{-2, 5}), 0.0); }

TEST(ClosedFormIfr, Errors) {
  try {
    closed_form_ifr(V{0, 0}, V{1, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroShiftedSeries);
  }
  try {
    closed_form_ifr(V{1, 2}, V{1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
  }
}

TEST(ClosedFormIfr, MatchesMeshSearch) {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr double step = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 5 + gen() % 30;
    V s(n), d(n);
    const double r = 0.001 + 0.05 * unit(gen);
    for (std::size_t j = 0; j < n; ++j) {
      s[j] = 1000.0 * unit(gen);
      d[j] = std::max(0.0, r * s[j] + 2.0 * (unit(gen) - 0.5));
    }
    const double cf = closed_form_ifr(s, d);
    const auto mesh = oracle::mesh_search_r(s, d, 0.0, oracle::mesh_upper(s, d), step);
    EXPECT_LE(std::abs(cf - mesh.r), 0.5 * step + 1e-12);
  }
}

TEST(BestFit, ZeroDeathsTieBreaksToFirstPair) {
  const V i = bell_curve(30, 100.0, 10.0, 4.0);
  const FitResult fit = best_fit(i, V(30, 0.0));
  EXPECT_EQ(fit, (FitResult{0, 0, 0.0, 0.0}));
}

TEST(BestFit, ZeroDeathsRejectedWhenZeroIfrDisallowed) {
  const V i = bell_curve(30, 100.0, 10.0, 4.0);
  try {
    best_fit(i, V(30, 0.0), FitConfig{50, false});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroDeathSeries);
  }
}

TEST(BestFit, RecoversBellCurveGridPoint) {
  const V i = bell_curve(100, 10000.0, 45.0, 12.0);
  const V d = scaled_shift(i, 3, 13, 0.005);
  const FitResult fit = best_fit(i, d);
  EXPECT_EQ(fit.lag_a, 3);
  EXPECT_EQ(fit.lag_b, 13);
  EXPECT_NEAR(fit.ifr, 0.005, 1e-15);
  EXPECT_LE(fit.error, 1e-12);
}

TEST(BestFit, ReturnedErrorIsMetricAtReturnedParameters) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> noise(-1.0, 1.0);
  const V i = bell_curve(60, 5000.0, 25.0, 9.0);
  V d = scaled_shift(i, 4, 9, 0.01);
  for (double& x : d) x = std::max(0.0, x + noise(gen));
  const FitResult fit = best_fit(i, d, FitConfig{20});
  const V cand = candidate_deaths(i, fit);
  EXPECT_NEAR(fit.error, error_metric(cand, d), 1e-9 * (1 + fit.error));
  EXPECT_LE(fit.lag_b, 20);
}

TEST(BestFit, ExactRecoveryAtRandomGridPoints) {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const V i = bell_curve(80, 1000.0 + 9000.0 * unit(gen), 20.0 + 30.0 * unit(gen), 5.0 + 10.0 * unit(gen));
    const int a = static_cast<int>(gen() % 15);
    const int b = a + static_cast<int>(gen() % 15);
    const double r = 0.001 + 0.02 * unit(gen);
    const V d = scaled_shift(i, a, b, r);
    const FitResult fit = best_fit(i, d, FitConfig{30});
    EXPECT_EQ(fit.lag_a, a);
    EXPECT_EQ(fit.lag_b, b);
    EXPECT_NEAR(fit.ifr, r, 1e-12 * r);
    double dn = 0.0;
    for (double x : d) dn += x * x;
    EXPECT_LE(fit.error, 1e-12 * dn);
  }
}

TEST(BestFit, ScalingEquivariance) {
  std::mt19937_64 gen(43);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const V i = bell_curve(50, 2000.0, 20.0, 7.0);
    V d = scaled_shift(i, 2, 8, 0.02);
    for (double& x : d) x = std::max(0.0, x + 3.0 * (unit(gen) - 0.5));
    const double alpha = 0.1 + 10.0 * unit(gen);
    V scaled(i);
    for (double& x : scaled) x *= alpha;
    const FitResult base = best_fit(i, d, FitConfig{15});
    const FitResult s = best_fit(scaled, d, FitConfig{15});
    EXPECT_EQ(s.lag_a, base.lag_a);
    EXPECT_EQ(s.lag_b, base.lag_b);
    EXPECT_NEAR(s.ifr, base.ifr / alpha, 1e-9 * base.ifr / alpha);
  }
}

TEST(BestFit, OptimalAgainstBruteForce) {
  std::mt19937_64 gen(47);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr double step = 1e-5;
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 15 + gen() % 10;
    V i(n), d;
    for (double& x : i) x = 100.0 + 900.0 * unit(gen);
    d = scaled_shift(i, static_cast<int>(gen() % 3), 3 + static_cast<int>(gen() % 3), 0.01);
    for (double& x : d) x = std::max(0.0, x + 2.0 * (unit(gen) - 0.5));
    const FitResult fit = best_fit(i, d, FitConfig{6});
    const auto brute = oracle::brute_force_grid(i, d, 6, step);
    EXPECT_LE(fit.error, brute.error + 1e-9);
    EXPECT_EQ(fit.lag_a, brute.a);
    EXPECT_EQ(fit.lag_b, brute.b);
  }
}

TEST(BestFit, SkipsPairsThatShiftEverythingAway) {
  // All mass on the last day: only a = 0 pairs keep anything in the window.
  const V i{0, 0, 0, 10};
  const FitResult fit = best_fit(i, V{0, 0, 0, 1}, FitConfig{5});
  EXPECT_EQ(fit.lag_a, 0);
  EXPECT_EQ(fit.lag_b, 0);
  EXPECT_DOUBLE_EQ(fit.ifr, 0.1);
}

TEST(BestFit, NoPositiveInfectionsIsError) {
  try {
    best_fit(V{0, 0, 0}, V{1, 1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroInfectionSeries);
  }
}

TEST(BestFit, LengthMismatch) {
  try {
    best_fit(V{1, 2}, V{1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
  }
}

}  // namespace
}  // namespace ifrlag

#include <cmath>

#include <gtest/gtest.h>

#include "nonlocal/errors.hpp"
#include "nonlocal/extrapolation.hpp"

using namespace nonlocal;

namespace {

std::vector<std::pair<double, double>> series(double (*f)(double), int n = 10) {
  std::vector<std::pair<double, double>> v;
  for (int k = 0; k < n; ++k) {
    const double d = 0.4 * std::pow(0.6, k);
    v.emplace_back(d, f(d));
  }
  return v;
}

}  // namespace

TEST(LimitExtrapolate, PowerRateSynthetic) {
  const auto r = limit_extrapolate(series([](double d) { return 5.0 + d; }));
  ASSERT_TRUE(r.fitted_limit);
  EXPECT_NEAR(*r.fitted_limit, 5.0, 1e-10);
  EXPECT_EQ(r.rate_model, RateModel::PowerRate);
  EXPECT_NEAR(r.fitted_rate, 1.0, 1e-6);
  EXPECT_FALSE(r.diverging);
}

TEST(LimitExtrapolate, LogRateSynthetic) {
  const auto r = limit_extrapolate(series([](double d) { return 3.0 + 1.0 / std::log(1.0 / d); }));
  ASSERT_TRUE(r.fitted_limit);
  EXPECT_NEAR(*r.fitted_limit, 3.0, 1e-8);
  EXPECT_EQ(r.rate_model, RateModel::LogRate);
}

TEST(LimitExtrapolate, DivergingSynthetic) {
  const auto r = limit_extrapolate(series([](double d) { return 1.0 / std::sqrt(d); }));
  EXPECT_TRUE(r.diverging);
  EXPECT_FALSE(r.fitted_limit);
}

TEST(LimitExtrapolate, ConstantSeries) {
  const auto r = limit_extrapolate(series([](double) { return 1.25; }));
  ASSERT_TRUE(r.fitted_limit);
  EXPECT_DOUBLE_EQ(*r.fitted_limit, 1.25);
}

TEST(LimitExtrapolate, RejectsBadInput) {
  std::vector<std::pair<double, double>> few{{0.4, 1}, {0.2, 1}, {0.1, 1}};
  EXPECT_THROW(limit_extrapolate(few), DomainError);
  std::vector<std::pair<double, double>> unordered{{0.4, 1}, {0.2, 1}, {0.3, 1}, {0.1, 1}};
  EXPECT_THROW(limit_extrapolate(unordered), DomainError);
}

TEST(TailDiverges, Thresholds) {
  const std::vector<double> grow{1, 1.3, 1.7, 2.2};
  const std::vector<double> slow{1, 1.1, 1.2, 1.3};
  EXPECT_TRUE(tail_diverges(grow));
  EXPECT_FALSE(tail_diverges(slow));
}

TEST(RateFits, RecoverParameters) {
  std::vector<std::pair<double, double>> w;
  for (double d : {0.1, 0.05, 0.025, 0.0125}) w.emplace_back(d, 2.0 - 3.0 * std::pow(d, 1.5));
  const RateFit f = fit_power_rate(w);
  EXPECT_NEAR(f.limit, 2.0, 1e-9);
  EXPECT_NEAR(f.rate, 1.5, 1e-6);
  EXPECT_NEAR(f.coefficient, -3.0, 1e-5);
  w.clear();
  for (double d : {0.1, 0.05, 0.025, 0.0125}) w.emplace_back(d, 2.0 + 0.7 / (2.0 + std::log(1.0 / d)));
  const RateFit g = fit_log_rate(w);
  EXPECT_NEAR(g.limit, 2.0, 1e-8);
  EXPECT_NEAR(g.rate, 2.0, 1e-5);
}

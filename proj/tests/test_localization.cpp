#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "nonlocal/errors.hpp"
#include "nonlocal/localization.hpp"
#include "oracles.hpp"

using namespace nonlocal;

namespace {

std::vector<OrliczFunction> kinds() {
  return {OrliczFunction::power(2), OrliczFunction::power_log(2, 1), OrliczFunction::max_power(1.5, 3)};
}

const double kGaussTarget = 2.0 * std::sqrt(std::numbers::pi / 2);

}  // namespace

TEST(Schedule, DeltasAndValidation) {
  const DeltaSchedule s{0.4, 0.5, 4};
  const auto d = s.deltas();
  ASSERT_EQ(d.size(), 4u);
  EXPECT_DOUBLE_EQ(d[3], 0.05);
  EXPECT_THROW((DeltaSchedule{0.4, 1.2, 4}.validate(0.5)), DomainError);
  EXPECT_THROW((DeltaSchedule{0.4, 0.5, 2}.validate(0.5)), DomainError);
  EXPECT_THROW((DeltaSchedule{0.4, 1e-3, 400}.validate(0.5)), ScheduleTooDeep);
}

TEST(ScaledPsi, ZeroAndPowerPrefactor) {
  EXPECT_EQ(scaled_psi(zero_function(1), OrliczFunction::power(2), 0.5, 0.1), 0.0);
  const auto u = catalog("bump", 1);
  const double s = 0.4, d = 0.2, p = 3.0;
  const double psi = psi_total(u, s, OrliczFunction::power(p), d).total;
  EXPECT_NEAR(scaled_psi(u, OrliczFunction::power(p), s, d), p * (1 - s) / std::pow(d, p * (1 - s)) * psi, 1e-12 * psi);
}

TEST(ScaledPsi, GaussianAgainstDenseQuadrature) {
  const double d = 0.05;
  auto inner = [d](double x) {
    auto f = [x](double h) {
      if (std::abs(h) < 1e-100) return std::pow(2 * x * std::exp(-x * x), 2);
      const double diff = std::exp(-x * x) - std::exp(-(x + h) * (x + h));
      return diff * diff / (h * h);
    };
    return oracle::integrate(f, -d, 0.0) + oracle::integrate(f, 0.0, d);
  };
  const double psi = oracle::integrate(inner, -9.0, 9.0);
  const double got = scaled_psi(catalog("gaussian", 1), OrliczFunction::power(2), 0.5, d);
  EXPECT_NEAR(got, psi / d, 1e-6 * got);
  EXPECT_LT(got, kGaussTarget * 1.1);
}

TEST(MainTheorem, GaussianPower) {
  const auto r = verify_main_theorem(catalog("gaussian", 1), OrliczFunction::power(2), 0.5, {});
  ASSERT_TRUE(r.fitted_limit);
  EXPECT_EQ(r.rate_model, RateModel::PowerRate);
  EXPECT_LT(r.relative_error, 0.01);
  EXPECT_EQ(r.matched_convention, "raw");
  EXPECT_NEAR(r.target, kGaussTarget, 1e-10);
}

TEST(MainTheorem, GaussianPowerLogNeedsLogRate) {
  const auto r = verify_main_theorem(catalog("gaussian", 1), OrliczFunction::power_log(2, 1), 0.5, {}, {}, 0.02);
  ASSERT_TRUE(r.fitted_limit);
  EXPECT_EQ(r.rate_model, RateModel::LogRate);
  EXPECT_LT(r.relative_error, 0.02);
  EXPECT_LT(r.log_residual, r.power_residual);
}

TEST(MainTheorem, StepDivergesForEveryKind) {
  for (double s : {0.5, 0.3})
    for (const auto& g : kinds()) {
      const auto r = verify_main_theorem(catalog("step", 1), g, s, {});
      EXPECT_TRUE(r.diverging) << g.name() << " s=" << s;
      EXPECT_TRUE(std::isinf(r.target));
    }
}

TEST(MainTheorem, GaussianNeverFlagged) {
  for (const auto& g : kinds()) {
    const auto r = verify_main_theorem(catalog("gaussian", 1), g, 0.5, {});
    EXPECT_FALSE(r.diverging) << g.name();
  }
}

TEST(MainTheorem, LiminfAndLimsupSides) {
  const auto u = catalog("gaussian", 1);
  const double s = 0.5;
  for (const auto& g : kinds()) {
    const auto r = verify_main_theorem(u, g, s, {});
    EXPECT_GE(r.tail_min, r.target * 0.95) << g.name();
    const double p = g.index();
    for (const auto& pt : r.series) {
      const double c = std::pow(pt.delta, 1 - s);
      const double bound = 2.0 / (1 - s) * phi_g_gradient(u, g, c) * p * (1 - s) / g(c);
      EXPECT_LE(pt.scaled, bound * (1 + 1e-9)) << g.name() << " delta=" << pt.delta;
    }
  }
}

TEST(MainTheorem, ScaleEquivarianceForPower) {
  const auto u = catalog("gaussian", 1);
  const auto u2 = scaled_function(u, 2.0);
  for (double p : {1.5, 3.0}) {
    const auto g = OrliczFunction::power(p);
    const DeltaSchedule sch{0.4, 0.6, 5};
    const auto a = verify_main_theorem(u, g, 0.5, sch), b = verify_main_theorem(u2, g, 0.5, sch);
    for (std::size_t i = 0; i < a.series.size(); ++i)
      EXPECT_NEAR(b.series[i].scaled / a.series[i].scaled, std::pow(2.0, p), 1e-10);
  }
}

TEST(Correa, FractionalKernelReducesToMainTheorem) {
  const auto u = catalog("gaussian", 1);
  const DeltaSchedule sch{0.4, 0.6, 6};
  const auto a = verify_main_theorem(u, OrliczFunction::power(2), 0.5, sch);
  const auto b = verify_correa(u, OrliczFunction::power(2), power_kernel(2.0), sch);
  for (std::size_t i = 0; i < a.series.size(); ++i) EXPECT_NEAR(b.series[i].scaled, a.series[i].scaled, 1e-8 * a.series[i].scaled);
}

TEST(Correa, ConstantKernel) {
  const auto r = verify_correa(catalog("gaussian", 1), OrliczFunction::power(2), constant_kernel(), {});
  ASSERT_TRUE(r.fitted_limit);
  EXPECT_LT(r.relative_error, 0.02);
  const auto z = verify_correa(zero_function(1), OrliczFunction::power(2), constant_kernel(), {});
  for (const auto& pt : z.series) EXPECT_EQ(pt.scaled, 0.0);
}

TEST(InequalitySuite, AllChecksPassOnAcceptanceGrid) {
  for (const char* name : {"gaussian", "tent"})
    for (const auto& g : {OrliczFunction::power(2), OrliczFunction::power_log(2, 1)})
      for (double d : {0.05, 0.1}) {
        InequalityParams prm;
        prm.delta = d;
        prm.delta_small = d / 2;
        const auto results = run_inequality_suite(catalog(name, 1), g, prm);
        EXPECT_EQ(results.size(), 6u);
        for (const auto& r : results) {
          EXPECT_TRUE(r.pass) << name << " " << g.name() << " " << to_string(r.check) << " " << r.detail;
          EXPECT_GT(r.margin, 0.0);
        }
      }
}

TEST(InequalitySuite, EquicontinuityWithWideHorizon) {
  for (double h : {0.01, 0.05}) {
    InequalityParams prm;
    prm.delta = 0.5;
    prm.h = h;
    const auto r = inequality_suite(InequalityCheck::Equicontinuity, catalog("tent", 1), OrliczFunction::power(2), prm);
    EXPECT_TRUE(r.pass) << h;
  }
}

TEST(InequalitySuite, NamesRoundTrip) {
  for (auto c : {InequalityCheck::GradientBound, InequalityCheck::MollifierMonotone, InequalityCheck::Truncation,
                 InequalityCheck::Equicontinuity, InequalityCheck::HorizonComparison})
    EXPECT_EQ(parse_inequality_check(to_string(c)), c);
  EXPECT_THROW(parse_inequality_check("nope"), DomainError);
}

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "nonlocal/closed_forms.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/nonlocal_quadrature.hpp"
#include "oracles.hpp"

using namespace nonlocal;

namespace {

const double kPi = std::numbers::pi;

std::vector<OrliczFunction> kinds() {
  return {OrliczFunction::power(2), OrliczFunction::power_log(2, 1), OrliczFunction::max_power(1.5, 3)};
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(KConstant, Examples) {
  for (double p : {1.5, 2.0, 3.0}) EXPECT_NEAR(k_constant(1, p, KConvention::Raw), 2.0, 1e-14);
  EXPECT_NEAR(k_constant(2, 2.0, KConvention::Raw), kPi, 1e-13);
  EXPECT_NEAR(k_constant(3, 2.0, KConvention::Normalized), 1.0 / 3.0, 1e-14);
}

TEST(KConstant, GammaFormulaForAllCases) {
  for (int n : {1, 2, 3})
    for (double p : {1.5, 2.0, 3.0}) {
      const double raw = k_constant(n, p, KConvention::Raw);
      EXPECT_NEAR(raw, oracle::k_raw(n, p), 1e-10 * raw);
      EXPECT_NEAR(k_constant(n, p, KConvention::Normalized), raw / oracle::sphere_area(n), 1e-12);
    }
}

TEST(KConstant, MonteCarloIsSeededAndClose) {
  const auto a = k_constant_report(3, 1.5, 0x5EED);
  const auto b = k_constant_report(3, 1.5, 0x5EED);
  EXPECT_EQ(a.monte_carlo_normalized, b.monte_carlo_normalized);
  EXPECT_NEAR(a.monte_carlo_normalized, a.normalized, 1e-3);
}

TEST(KConstant, LogMoment) {
  for (double p : {1.5, 2.0, 3.0}) {
    EXPECT_NEAR(k_ln_constant(1, p), 0.0, 1e-15);
    EXPECT_NEAR(k_ln_constant(3, p), 4 * kPi / ((p + 1) * (p + 1)), 1e-10);
    const double ref = 4.0 * oracle::integrate(
                                 [p](double th) {
                                   const double c = std::cos(th);
                                   return std::pow(c, p) * -std::log(c);
                                 },
                                 0.0, kPi / 2);
    EXPECT_NEAR(k_ln_constant(2, p), ref, 1e-10);
  }
}

TEST(RadialIdentity, AllDimensionsPowersAndOrders) {
  for (int n : {1, 2, 3})
    for (double p : {1.5, 2.0, 3.0})
      for (double s : {0.25, 0.5, 0.75}) {
        const double got = phi_numeric(1.0, s, 1.0, OrliczFunction::power(p), n);
        EXPECT_NEAR(got, oracle::k_raw(n, p) / (p * (1 - s)), 1e-8 * got) << n << " " << p << " " << s;
      }
}

TEST(PhiNumeric, Examples) {
  EXPECT_EQ(phi_numeric(0.0, 0.5, 0.1, OrliczFunction::power(2), 2), 0.0);
  EXPECT_NEAR(phi_numeric(1.0, 0.5, 0.01, OrliczFunction::power(2), 1), 0.02, 1e-15);
  EXPECT_NEAR(phi_closed_form(OrliczKind::Power, 1.0, 0.5, 0.01, 1, 2.0), 0.02, 1e-15);
  const auto pl = OrliczFunction::power_log(2, 1);
  EXPECT_LT(rel(phi_numeric(2.0, 0.5, 0.01, pl, 2), phi_closed_form(pl, 2.0, 0.5, 0.01, 2)), 1e-6);
}

TEST(PhiClosedForm, MaxPowerSmallBranchUsesLowExponent) {
  // a delta^(1-s) <= 1 keeps |e.h| a / |h|^s <= 1, where G = t^1.5.
  const double a = 2.0, s = 0.5, d = 0.1, lo = 1.5;
  const double want = oracle::k_raw(3, lo) * std::pow(a, lo) * std::pow(d, lo * (1 - s)) / (lo * (1 - s));
  EXPECT_NEAR(phi_closed_form(OrliczKind::MaxPower, a, s, d, 3, lo, 3.0), want, 1e-12 * want);
}

TEST(PhiClosedForm, PowerLogAtUnitAmplitude) {
  const double s = 0.5, d = 0.2, p = 2.0;
  const double c = std::pow(d, 1 - s);
  const double K = oracle::k_raw(2, p), Kln = k_ln_constant(2, p);
  const double want = std::pow(c, p) / (p * (1 - s)) * (K * (1 - std::log(c) + 1 / p) + Kln);
  EXPECT_NEAR(phi_closed_form(OrliczKind::PowerLog, 1.0, s, d, 2, p), want, 1e-12 * want);
}

TEST(PhiClosedForm, MatchesQuadratureOnGrid) {
  for (const auto& g : kinds())
    for (int n : {1, 2, 3})
      for (double a : {0.5, 1.0, 4.0})
        for (double s : {0.25, 0.5, 0.75})
          for (double d : {0.05, 0.3, 1.0}) {
            const double x = phi_numeric(a, s, d, g, n), c = phi_closed_form(g, a, s, d, n);
            EXPECT_LT(rel(x, c), 1e-6) << g.name() << " n=" << n << " a=" << a << " s=" << s << " d=" << d;
          }
}

TEST(TildeG, Examples) {
  for (int n : {1, 2, 3}) {
    EXPECT_NEAR(tilde_g_closed_form(OrliczKind::Power, 1.7, n, 2.0), oracle::k_raw(n, 2) / 2 * 1.7 * 1.7, 1e-12);
    EXPECT_EQ(tilde_g_closed_form(OrliczKind::PowerLog, 0.0, n, 2.0), 0.0);
  }
  const double p = 2.0, K = kPi, Kln = k_ln_constant(2, p);
  EXPECT_NEAR(tilde_g_closed_form(OrliczKind::PowerLog, 1.0, 2, p), (K + Kln + K / p) / p, 1e-12);
}

TEST(TildeG, IsTheUnitHorizonLimit) {
  for (const auto& g : kinds())
    for (double a : {0.5, 2.0}) {
      const double t = tilde_g_closed_form(g, a, 2);
      EXPECT_NEAR((1 - 0.999) * phi_closed_form(g, a, 0.999, 1.0, 2), t, 1e-12 * t);
      EXPECT_NEAR((1 - 0.999) * phi_numeric(a, 0.999, 1.0, g, 2), t, 1e-6 * t) << g.name();
    }
}

TEST(PhiNumeric, DirectionInvariance) {
  std::mt19937_64 rng(0x5EED);
  std::normal_distribution<double> nd;
  for (const auto& g : kinds())
    for (int n : {2, 3}) {
      std::vector<double> v;
      for (int k = 0; k < 3; ++k) {
        Point e{nd(rng), nd(rng), n == 3 ? nd(rng) : 0.0};
        const double len = norm(e);
        for (double& x : e) x /= len;
        v.push_back(phi_numeric(1.3, 0.5, 0.4, g, n, {}, e));
      }
      const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
      EXPECT_LT((*hi - *lo) / *lo, 1e-8) << g.name() << " n=" << n;
    }
}

TEST(PsiLocal, ZeroField) {
  EXPECT_EQ(psi_local(zero_function(2), {0.1, 0.2, 0}, 0.5, OrliczFunction::power(2), 0.3).value, 0.0);
}

TEST(PsiLocal, LinearRampMatchesPhi) {
  for (int n : {1, 2, 3})
    for (const auto& g : kinds()) {
      const double a = 1.7;
      Point dir{1.0, 1.0, n == 3 ? 1.0 : 0.0};
      if (n == 1) dir = {1.0, 0, 0};
      const double len = norm(dir);
      for (double& x : dir) x /= len;
      const auto u = linear_ramp(a, dir, 2.0, n);
      const double got = psi_local(u, {0.1, 0.0, 0.0}, 0.5, g, 0.3).value;
      EXPECT_NEAR(got, phi_numeric(a, 0.5, 0.3, g, n), 1e-8 * got) << g.name() << " n=" << n;
    }
  const double want = oracle::k_raw(2, 2) * 1.7 * 1.7 * std::pow(0.3, 1.0) / (2 * 0.5);
  const auto u = linear_ramp(1.7, {0, 1, 0}, 2.0, 2);
  EXPECT_NEAR(psi_local(u, {0, 0, 0}, 0.5, OrliczFunction::power(2), 0.3).value, want, 1e-10 * want);
}

TEST(PsiLocal, GaussianAgainstDenseQuadrature) {
  const auto u = catalog("gaussian", 1);
  const double x = 0.3, d = 0.1;
  const auto f = [x](double h) {
    if (std::abs(h) < 1e-100) return std::pow(2 * x * std::exp(-x * x), 2);
    const double diff = std::exp(-x * x) - std::exp(-(x + h) * (x + h));
    return diff * diff / (h * h);
  };
  const double want = oracle::integrate(f, -d, 0.0) + oracle::integrate(f, 0.0, d);
  const double got = psi_local(u, {x, 0, 0}, 0.5, OrliczFunction::power(2), d).value;
  EXPECT_NEAR(got, want, 1e-6 * want);
}

TEST(PsiTotal, ZeroAndMonotoneInDelta) {
  EXPECT_EQ(psi_total(zero_function(1), 0.5, OrliczFunction::power(2), 0.2).total, 0.0);
  for (const auto& g : kinds()) {
    double prev = 0.0;
    for (double d : {0.05, 0.1, 0.2, 0.4}) {
      const double v = psi_total(catalog("gaussian", 1), 0.5, g, d).total;
      EXPECT_GT(v, prev) << g.name();
      prev = v;
    }
  }
}

TEST(PsiTotal, GradientBoundForGaussian) {
  for (int n : {1, 2})
    for (const auto& g : kinds()) {
      const auto u = catalog("gaussian", n);
      const double s = 0.5, d = 0.1;
      const double lhs = psi_total(u, s, g, d).total;
      const double rhs = oracle::sphere_area(n) / (1 - s) * phi_g_gradient(u, g, std::pow(d, 1 - s));
      EXPECT_LE(lhs, rhs) << g.name() << " n=" << n;
    }
}

TEST(PsiTotal, MollifiedTentHasSmallerEnergy) {
  const auto u = catalog("tent", 1);
  const auto ur = mollify(u, {0.05});
  for (const auto& g : kinds())
    EXPECT_LE(psi_total(ur, 0.5, g, 0.1).total, psi_total(u, 0.5, g, 0.1).total * (1 + 1e-4)) << g.name();
}

TEST(PsiTotal, HomogeneityForPower) {
  const auto u = catalog("bump", 2);
  const auto u2 = scaled_function(u, 2.0);
  for (double p : {1.5, 2.0, 3.0}) {
    const auto g = OrliczFunction::power(p);
    const double a = psi_total(u, 0.5, g, 0.2).total, b = psi_total(u2, 0.5, g, 0.2).total;
    EXPECT_NEAR(b / a, std::pow(2.0, p), 1e-10);
  }
}

TEST(PsiTotal, ErrorEstimateAndProfile) {
  const auto e = psi_total(catalog("tent", 1), 0.5, OrliczFunction::power(2), 0.2);
  EXPECT_LT(e.quadrature_error_estimate, 1e-8 * e.total);
  EXPECT_EQ(e.unconverged_nodes, 0u);
  EXPECT_GT(e.node_count, 0u);
  EXPECT_NE(summary_record(e).find("\"total\""), std::string::npos);
}

TEST(PhiG, Examples) {
  EXPECT_EQ(phi_g_norm(zero_function(1), OrliczFunction::power(2)), 0.0);
  EXPECT_NEAR(phi_g_norm(catalog("tent", 1), OrliczFunction::power(2)), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(phi_g_norm(catalog("gaussian", 1), OrliczFunction::power(2)), std::sqrt(kPi / 2), 1e-10);
}

TEST(KernelEnergy, FractionalKernelReproducesPsi) {
  const auto u = catalog("gaussian", 1);
  const double s = 0.5, p = 2.0, d = 0.1;
  const double a = psi_kernel_total(u, OrliczFunction::power(p), power_kernel(1 + p * s), d);
  const double b = psi_total(u, s, OrliczFunction::power(p), d).total;
  EXPECT_NEAR(a, b, 1e-8 * b);
}

TEST(KernelEnergy, ZeroField) {
  EXPECT_EQ(psi_kernel_total(zero_function(1), OrliczFunction::power(2), constant_kernel(), 0.1), 0.0);
}

TEST(KernelEnergy, ConstantKernelTentAgainstNestedQuadrature) {
  const double d = 0.05;
  auto tent = [](double x) { return std::max(0.0, 1.0 - std::abs(x)); };
  auto inner = [&](double x) {
    double total = 0.0;
    std::vector<double> cuts{x - d};
    for (double k : {-1.0, 0.0, 1.0})
      if (k > x - d && k < x + d) cuts.push_back(k);
    cuts.push_back(x + d);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      total += oracle::integrate([&](double y) { return std::pow(tent(x) - tent(y), 2); }, cuts[i], cuts[i + 1]);
    return total;
  };
  double want = 0.0;
  const double cuts[] = {-1 - d, -1, -1 + d, -d, 0, d, 1 - d, 1, 1 + d};
  for (int i = 0; i < 8; ++i) want += oracle::integrate(inner, cuts[i], cuts[i + 1]);
  const double got = psi_kernel_total(catalog("tent", 1), OrliczFunction::power(2), constant_kernel(), d);
  EXPECT_NEAR(got, want, 1e-6 * want);
}

TEST(CubatureSpec, Validation) {
  CubatureSpec bad;
  bad.nodes_per_panel = 0;
  EXPECT_THROW(bad.validate(), DomainError);
  EXPECT_THROW(psi_local(catalog("tent", 1), {0, 0, 0}, 0.95, OrliczFunction::power(2), 0.1), DomainError);
}

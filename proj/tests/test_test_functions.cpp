#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "nonlocal/errors.hpp"
#include "nonlocal/test_functions.hpp"
#include "oracles.hpp"

using namespace nonlocal;

TEST(Catalog, BasicValues) {
  const auto g = catalog(CatalogName::Gaussian, 1);
  EXPECT_DOUBLE_EQ(g({0, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(g.gradient({0, 0, 0})[0], 0.0);
  EXPECT_EQ(catalog("step", 1).smoothness, Smoothness::Discontinuous);
  EXPECT_EQ(catalog("tent", 2).smoothness, Smoothness::Lipschitz);
  EXPECT_THROW(catalog("nope", 1), DomainError);
  EXPECT_THROW(catalog(CatalogName::Bump, 4), DomainError);
}

TEST(Catalog, GradientEnergy) {
  EXPECT_NEAR(gradient_energy(catalog("gaussian", 1), 2.0), std::sqrt(std::numbers::pi / 2), 1e-10);
  EXPECT_NEAR(gradient_energy(catalog("tent", 1), 2.0), 2.0, 1e-12);
  EXPECT_NEAR(gradient_energy(catalog("tent", 1), 3.0), 2.0, 1e-12);
  EXPECT_TRUE(std::isinf(gradient_energy(catalog("step", 1), 2.0)));
  // int_{R^2} |grad e^{-|x|^2}|^2 = 2 pi int 4 r^3 e^{-2r^2} dr = pi
  EXPECT_NEAR(gradient_energy(catalog("gaussian", 2), 2.0), std::numbers::pi, 1e-9);
}

TEST(Catalog, GradientsMatchFiniteDifferences) {
  std::mt19937_64 rng(0x5EED);
  for (int dim : {1, 2, 3})
    for (auto name : {CatalogName::Gaussian, CatalogName::Bump, CatalogName::Tent, CatalogName::Plateau}) {
      const auto u = catalog(name, dim);
      std::uniform_real_distribution<double> d(-1.8, 1.8);
      for (int k = 0; k < 100; ++k) {
        Point x{0, 0, 0};
        for (int i = 0; i < dim; ++i) x[i] = d(rng);
        const double r = norm(x);
        // Stay clear of kinks of the Lipschitz fields.
        bool near_kink = r < 1e-3;
        for (double b : u.breakpoints) near_kink = near_kink || std::abs(r - b) < 1e-3;
        if (near_kink) continue;
        const Point g = u.gradient(x);
        for (int i = 0; i < dim; ++i) {
          const double h = 1e-6;
          Point a = x, b = x;
          a[i] += h;
          b[i] -= h;
          const double fd = (u(a) - u(b)) / (2 * h);
          EXPECT_NEAR(g[i], fd, 1e-6 * std::max(1.0, std::abs(fd))) << u.name << " dim=" << dim;
        }
      }
    }
}

TEST(Mollifier, UnitMass) {
  for (int dim : {1, 2, 3})
    for (double r : {1.0, 0.1, 0.01}) EXPECT_NEAR(mollifier_mass(dim, r), 1.0, 1e-8) << dim << " " << r;
}

TEST(Mollifier, PreservesConstantsAwayFromEdges) {
  const auto u = constant_ball(2.5, 3.0, 2);
  const auto ur = mollify(u, {0.1});
  EXPECT_NEAR(ur({0.2, -0.3, 0}), 2.5, 1e-8);
}

TEST(Mollifier, TentPeakDropsSlightly) {
  const auto ur = mollify(catalog("tent", 1), {0.1});
  const double v = ur({0, 0, 0});
  // Dense convolution: 1 - int |y| rho_r(y) dy.
  const double c = 1.0 / oracle::integrate([](double y) { return std::exp(-1.0 / (1.0 - y * y)); }, -1.0, 1.0);
  const double first_moment =
      2.0 * c * oracle::integrate([](double y) { return y * std::exp(-1.0 / (1.0 - y * y)); }, 0.0, 1.0);
  EXPECT_NEAR(v, 1.0 - 0.1 * first_moment, 1e-9);
  EXPECT_LT(v, 1.0);
  EXPECT_GT(v, 0.9);
}

TEST(Mollifier, ConvergesAsRadiusShrinks) {
  const auto u = catalog("tent", 1);
  double prev = 1.0;
  for (double r : {0.2, 0.05, 0.0125}) {
    const auto ur = mollify(u, {r});
    double worst = 0.0;
    for (int i = -20; i <= 20; ++i) {
      const Point x{0.0731 * i, 0, 0};
      worst = std::max(worst, std::abs(ur(x) - u(x)));
    }
    EXPECT_LT(worst, prev);
    prev = worst;
  }
  EXPECT_LT(prev, 0.01);
}

TEST(Truncation, CutoffProperties) {
  for (int k : {1, 2, 5}) {
    double prev = 1.0, max_slope = 0.0;
    for (int i = 0; i <= 4000; ++i) {
      const double r = 3.0 * k * i / 4000.0;
      const double c = cutoff(r, k);
      EXPECT_GE(c, 0.0);
      EXPECT_LE(c, 1.0);
      EXPECT_LE(c, prev + 1e-15);
      prev = c;
      max_slope = std::max(max_slope, std::abs(cutoff_slope(r, k)));
    }
    EXPECT_LE(max_slope, 2.0 / k);
  }
}

TEST(Truncation, Examples) {
  const auto bump = catalog("bump", 2);
  const auto tb = truncate(bump, 1);
  EXPECT_DOUBLE_EQ(tb({0.3, 0.4, 0}), bump({0.3, 0.4, 0}));
  const auto tg = truncate(catalog("gaussian", 1), 1);
  EXPECT_EQ(tg({2.0, 0, 0}), 0.0);
  EXPECT_EQ(tg({-2.5, 0, 0}), 0.0);
}

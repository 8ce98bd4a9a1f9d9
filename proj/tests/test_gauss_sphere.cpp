#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "nonlocal/gauss_legendre.hpp"
#include "nonlocal/special_functions.hpp"
#include "nonlocal/sphere.hpp"
#include "oracles.hpp"

using namespace nonlocal;

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
  for (int n : {1, 2, 5, 16, 32}) {
    for (int k = 0; k <= 2 * n - 1; ++k) {
      const double got = gauss_integrate([k](double x) { return std::pow(x, k); }, -1.0, 1.0, n);
      const double want = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
      EXPECT_NEAR(got, want, 1e-14) << "n=" << n << " k=" << k;
    }
  }
}

TEST(GaussLegendre, WeightsSumToTwoAndNodesAreSymmetric) {
  for (int n : {3, 8, 20, 64}) {
    const auto& r = gauss_legendre(n);
    double sum = 0.0;
    for (double w : r.weights) sum += w;
    EXPECT_NEAR(sum, 2.0, 1e-14);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(r.nodes[i], -r.nodes[n - 1 - i], 1e-15);
  }
}

TEST(GaussLegendre, GradedNodesHandleEndpointSingularity) {
  const NodeSet ns = graded_nodes(0.0, 1.0, 16, 80, true, false);
  EXPECT_NEAR(integrate(ns, [](double x) { return 1.0 / std::sqrt(x); }), 2.0, 1e-10);
}

TEST(GaussLegendre, CompositeNodesRespectBreaks) {
  const double br[] = {0.3};
  const NodeSet ns = composite_nodes(0.0, 1.0, 8, 0.25, br);
  EXPECT_NEAR(integrate(ns, [](double x) { return std::abs(x - 0.3); }), 0.5 * (0.09 + 0.49), 1e-14);
}

TEST(PairwiseSum, MatchesLongDoubleAccumulation) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  std::vector<double> v(100000);
  long double ref = 0.0L;
  for (double& x : v) {
    x = d(rng);
    ref += x;
  }
  EXPECT_NEAR(pairwise_sum(v), static_cast<double>(ref), 1e-9);
}

TEST(SpecialFunctions, LogGammaMatchesStd) {
  for (double x : {0.1, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0, 50.5, 170.0})
    EXPECT_NEAR(log_gamma(x), std::lgamma(x), 1e-13 * std::max(1.0, std::abs(std::lgamma(x)))) << x;
}

TEST(SpecialFunctions, NormalizedMomentMatchesGammaFormula) {
  for (int n : {1, 2, 3})
    for (double p : {1.0, 1.5, 2.0, 3.0})
      EXPECT_NEAR(normalized_sphere_moment(n, p), oracle::k_raw(n, p) / oracle::sphere_area(n), 1e-13);
}

TEST(Sphere, AreasAndVolumes) {
  for (int n : {1, 2, 3}) {
    const auto c = sphere_constants(n);
    EXPECT_NEAR(c.surface_area, oracle::sphere_area(n), 1e-14);
    EXPECT_NEAR(c.ball_volume, oracle::sphere_area(n) / n, 1e-14);
  }
}

TEST(Sphere, RulesIntegrateMomentsAlongArbitraryPoles) {
  const Point pole{0.3, -0.5, 0.81};
  for (int n : {1, 2, 3}) {
    Point e = pole;
    for (int i = n; i < 3; ++i) e[i] = 0.0;
    const double len = norm(e);
    for (double& x : e) x /= len;
    const SphereRule r = make_sphere_rule(n, e);
    for (double p : {2.0, 3.0, 1.5}) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(std::abs(dot(r.directions[i], e)), p);
      EXPECT_NEAR(s, oracle::k_raw(n, p), 1e-10) << "n=" << n << " p=" << p;
    }
  }
}

TEST(Sphere, ZonalIntegralOfKinkedFunction) {
  // f sees |w.e|: int_{S^2} f = 4 pi int_0^1 |z - 0.4| dz
  const double br[] = {0.4};
  const double got = zonal_integral(3, [](double z) { return std::abs(z - 0.4); }, br);
  EXPECT_NEAR(got, 4.0 * std::numbers::pi * 0.5 * (0.4 * 0.4 + 0.6 * 0.6), 1e-12);
}

TEST(Sphere, PartialZonalIntegralInTwoDimensions) {
  // z = cos(theta): measure of {|z| <= 0.5} on the circle is 4 * (pi/2 - pi/3)
  const double got = zonal_integral(2, [](double) { return 1.0; }, -0.5, 0.5);
  EXPECT_NEAR(got, 4.0 * (std::numbers::pi / 2 - std::numbers::pi / 3), 1e-10);
}

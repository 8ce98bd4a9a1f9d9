#pragma once

#include <functional>
#include <span>
#include <vector>

#include "nonlocal/geometry.hpp"

namespace nonlocal {

struct SphereConstants {
  int dim;
  double surface_area;  // |S^{N-1}|
  double ball_volume;   // |B(0,1)| = surface_area / dim
};

SphereConstants sphere_constants(int dim);

struct SphereSpec {
  int order = 20;    // Gauss order per panel
  int levels = 14;   // geometric panels toward the equator of the pole
  int azimuth = 32;  // trapezoid points in the azimuth (N = 3)
};

/// Quadrature on S^{N-1}. Nodes are graded toward the great circle orthogonal
/// to the pole, where integrands of |w.pole| lose smoothness.
struct SphereRule {
  std::vector<Point> directions;
  std::vector<double> weights;
  std::size_t size() const { return weights.size(); }
};

/// `zonal_breaks` are values of |w.pole| in (0,1) at which the integrand kinks.
SphereRule make_sphere_rule(int dim, const Point& pole, const SphereSpec& spec = {},
                            std::span<const double> zonal_breaks = {});

/// Rule for integrands invariant under rotations about the pole: one direction
/// per polar node, azimuth folded into the weight.
SphereRule make_axisymmetric_rule(int dim, const Point& pole, const SphereSpec& spec = {},
                                  std::span<const double> zonal_breaks = {});

/// Integral over S^{N-1} of f(|w.e|); f is called with z in [0,1].
double zonal_integral(int dim, const std::function<double(double)>& f,
                      std::span<const double> breaks = {}, const SphereSpec& spec = {});

/// Same integral restricted to lo <= |w.e| <= hi.
double zonal_integral(int dim, const std::function<double(double)>& f, double lo, double hi,
                      const SphereSpec& spec = {});

}  // namespace nonlocal

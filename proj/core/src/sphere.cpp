#include "nonlocal/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nonlocal/errors.hpp"
#include "nonlocal/gauss_legendre.hpp"

namespace nonlocal {

namespace {

constexpr double kPi = std::numbers::pi;

void check_dim(int dim) {
  if (dim < 1 || dim > 3) throw DomainError("dimension must be 1, 2 or 3");
}

// Polar angles theta in [0, pi/2] where |cos theta| hits a break.
std::vector<double> angle_breaks(std::span<const double> zonal_breaks) {
  std::vector<double> out;
  for (double b : zonal_breaks)
    if (b > 0.0 && b < 1.0) out.push_back(std::acos(b));
  return out;
}

std::vector<double> mirrored(std::span<const double> br, double about) {
  std::vector<double> out;
  for (double b : br) out.push_back(2.0 * about - b);
  return out;
}

// Nodes for theta in [0, pi], graded toward pi/2 from both sides.
NodeSet half_circle(const SphereSpec& spec, std::span<const double> zonal_breaks) {
  const auto br = angle_breaks(zonal_breaks);
  NodeSet ns = graded_nodes(0.0, kPi / 2, spec.order, spec.levels, false, true, br);
  NodeSet hi = graded_nodes(kPi / 2, kPi, spec.order, spec.levels, true, false,
                            mirrored(br, kPi / 2));
  ns.x.insert(ns.x.end(), hi.x.begin(), hi.x.end());
  ns.w.insert(ns.w.end(), hi.w.begin(), hi.w.end());
  return ns;
}

// Nodes for z in [-1, 1], graded toward 0 from both sides.
NodeSet polar_axis(const SphereSpec& spec, std::span<const double> zonal_breaks) {
  std::vector<double> br, neg;
  for (double b : zonal_breaks)
    if (b > 0.0 && b < 1.0) {
      br.push_back(b);
      neg.push_back(-b);
    }
  NodeSet ns = graded_nodes(-1.0, 0.0, spec.order, spec.levels, false, true, neg);
  NodeSet hi = graded_nodes(0.0, 1.0, spec.order, spec.levels, true, false, br);
  ns.x.insert(ns.x.end(), hi.x.begin(), hi.x.end());
  ns.w.insert(ns.w.end(), hi.w.begin(), hi.w.end());
  return ns;
}

}  // namespace

Frame make_frame(int dim, const Point& pole) {
  check_dim(dim);
  const double n = norm(pole);
  Frame f{};
  f.e = n > 0.0 ? scaled(1.0 / n, pole) : unit_axis(0);
  if (dim == 1) {
    f.e = {f.e[0] >= 0.0 ? 1.0 : -1.0, 0.0, 0.0};
    return f;
  }
  if (dim == 2) {
    f.e[2] = 0.0;
    f.e = scaled(1.0 / norm(f.e), f.e);
    f.f1 = {-f.e[1], f.e[0], 0.0};
    return f;
  }
  // Gram-Schmidt against the axis least aligned with e.
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(f.e[i]) < std::abs(f.e[k])) k = i;
  Point a = unit_axis(k);
  a = axpy(-dot(a, f.e), f.e, a);
  f.f1 = scaled(1.0 / norm(a), a);
  f.f2 = {f.e[1] * f.f1[2] - f.e[2] * f.f1[1], f.e[2] * f.f1[0] - f.e[0] * f.f1[2],
          f.e[0] * f.f1[1] - f.e[1] * f.f1[0]};
  return f;
}

SphereConstants sphere_constants(int dim) {
  check_dim(dim);
  const double area = dim == 1 ? 2.0 : (dim == 2 ? 2.0 * kPi : 4.0 * kPi);
  return {dim, area, area / dim};
}

SphereRule make_sphere_rule(int dim, const Point& pole, const SphereSpec& spec,
                            std::span<const double> zonal_breaks) {
  check_dim(dim);
  const Frame fr = make_frame(dim, pole);
  SphereRule r;
  if (dim == 1) {
    r.directions = {fr.e, scaled(-1.0, fr.e)};
    r.weights = {1.0, 1.0};
    return r;
  }
  if (dim == 2) {
    const NodeSet half = half_circle(spec, zonal_breaks);
    for (int side : {1, -1})
      for (std::size_t i = 0; i < half.size(); ++i) {
        const double th = half.x[i];
        r.directions.push_back(axpy(side * std::sin(th), fr.f1, scaled(std::cos(th), fr.e)));
        r.weights.push_back(half.w[i]);
      }
    return r;
  }
  const NodeSet z = polar_axis(spec, zonal_breaks);
  const int m = spec.azimuth;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double rho = std::sqrt(std::max(0.0, 1.0 - z.x[i] * z.x[i]));
    for (int j = 0; j < m; ++j) {
      const double ph = 2.0 * kPi * (j + 0.5) / m;
      Point d = scaled(z.x[i], fr.e);
      d = axpy(rho * std::cos(ph), fr.f1, d);
      d = axpy(rho * std::sin(ph), fr.f2, d);
      r.directions.push_back(d);
      r.weights.push_back(z.w[i] * 2.0 * kPi / m);
    }
  }
  return r;
}

SphereRule make_axisymmetric_rule(int dim, const Point& pole, const SphereSpec& spec,
                                  std::span<const double> zonal_breaks) {
  check_dim(dim);
  if (dim == 1) return make_sphere_rule(dim, pole, spec);
  const Frame fr = make_frame(dim, pole);
  SphereRule r;
  if (dim == 2) {
    const NodeSet half = half_circle(spec, zonal_breaks);
    for (std::size_t i = 0; i < half.size(); ++i) {
      const double th = half.x[i];
      r.directions.push_back(axpy(std::sin(th), fr.f1, scaled(std::cos(th), fr.e)));
      r.weights.push_back(2.0 * half.w[i]);
    }
    return r;
  }
  const NodeSet z = polar_axis(spec, zonal_breaks);
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double rho = std::sqrt(std::max(0.0, 1.0 - z.x[i] * z.x[i]));
    r.directions.push_back(axpy(rho, fr.f1, scaled(z.x[i], fr.e)));
    r.weights.push_back(2.0 * kPi * z.w[i]);
  }
  return r;
}

double zonal_integral(int dim, const std::function<double(double)>& f,
                      std::span<const double> breaks, const SphereSpec& spec) {
  check_dim(dim);
  if (dim == 1) return 2.0 * f(1.0);
  if (dim == 2) {
    const NodeSet ns =
        graded_nodes(0.0, kPi / 2, spec.order, spec.levels, false, true, angle_breaks(breaks));
    return 4.0 * integrate(ns, [&](double th) { return f(std::cos(th)); });
  }
  const NodeSet ns = graded_nodes(0.0, 1.0, spec.order, spec.levels, true, false, breaks);
  return 4.0 * kPi * integrate(ns, f);
}

double zonal_integral(int dim, const std::function<double(double)>& f, double lo, double hi,
                      const SphereSpec& spec) {
  check_dim(dim);
  lo = std::clamp(lo, 0.0, 1.0);
  hi = std::clamp(hi, 0.0, 1.0);
  if (hi <= lo) return 0.0;
  if (dim == 1) return hi >= 1.0 ? 2.0 * f(1.0) : 0.0;
  if (dim == 2) {
    // theta = acos z, decreasing; grade toward theta = pi/2 when lo = 0.
    const double a = std::acos(hi), b = std::acos(lo);
    const NodeSet ns = graded_nodes(a, b, spec.order, spec.levels, false, lo == 0.0);
    return 4.0 * integrate(ns, [&](double th) { return f(std::cos(th)); });
  }
  const NodeSet ns = graded_nodes(lo, hi, spec.order, spec.levels, lo == 0.0, false);
  return 4.0 * kPi * integrate(ns, f);
}

}  // namespace nonlocal

#include "nonlocal/nonlocal_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nonlocal/csv.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/gauss_legendre.hpp"
#include "nonlocal/parallel.hpp"

namespace nonlocal {

void CubatureSpec::validate() const {
  if (radial_panels < 8) throw DomainError("CubatureSpec: radial_panels must be >= 8");
  if (max_radial_panels < radial_panels) throw DomainError("CubatureSpec: max_radial_panels < radial_panels");
  if (nodes_per_panel < 4 || outer_order < 4 || sphere.order < 4)
    throw DomainError("CubatureSpec: quadrature orders must be >= 4");
  if (sphere.levels < 0 || sphere.azimuth < 4) throw DomainError("CubatureSpec: invalid sphere rule");
  if (!(r_floor > 0.0)) throw DomainError("CubatureSpec: r_floor must be > 0");
  if (!(outer_panel > 0.0)) throw DomainError("CubatureSpec: outer_panel must be > 0");
  if (outer_grading < 0) throw DomainError("CubatureSpec: outer_grading must be >= 0");
  if (!(tail_tol > 0.0)) throw DomainError("CubatureSpec: tail_tol must be > 0");
}

namespace {

// sum_j w_j int_0^1 F(j, t) dt on geometric panels toward t = 0.
// breaks[j] holds t values in (0,1) where F(j, .) is not smooth.
template <class F>
LocalValue graded_t_integral(const std::vector<double>& w, const std::vector<std::vector<double>>& breaks,
                             F&& f, const CubatureSpec& spec) {
  const GaussRule& rule = gauss_legendre(spec.nodes_per_panel);
  LocalValue out;
  out.converged = false;
  std::vector<double> parts;
  double total = 0.0;
  int small = 0;
  std::vector<double> cuts;
  for (int k = 0; k < spec.max_radial_panels; ++k) {
    const double hi = std::ldexp(1.0, -k), lo = 0.5 * hi;
    if (lo < spec.r_floor) {
      out.converged = true;
      break;
    }
    double c = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      cuts.assign({lo, hi});
      for (double b : breaks[j])
        if (b > lo && b < hi) cuts.push_back(b);
      if (cuts.size() > 2) std::sort(cuts.begin(), cuts.end());
      double cj = 0.0;
      for (std::size_t q = 0; q + 1 < cuts.size(); ++q) {
        const double half = 0.5 * (cuts[q + 1] - cuts[q]), mid = 0.5 * (cuts[q + 1] + cuts[q]);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
          cj += half * rule.weights[i] * f(j, mid + half * rule.nodes[i]);
      }
      c += w[j] * cj;
    }
    parts.push_back(c);
    total += c;
    ++out.panels;
    small = (k + 1 >= spec.radial_panels && std::abs(c) <= spec.tail_tol * std::abs(total)) ? small + 1 : 0;
    if (small >= 2) {
      out.converged = true;
      break;
    }
  }
  std::reverse(parts.begin(), parts.end());
  out.value = pairwise_sum(parts);
  return out;
}

void check_psi_domain(double s, double delta) {
  if (!(s >= 0.1 && s <= 0.9)) throw DomainError("s must lie in [0.1, 0.9]");
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("delta must lie in (0, 1]");
}

// Radii r in (0, delta) where x + r w crosses a sphere |y| = b.
void crossing_radii(const Point& x, const Point& w, const std::vector<double>& radii, double delta,
                    std::vector<double>& out) {
  const double xw = dot(x, w), xx = dot(x, x);
  for (double b : radii) {
    const double disc = xw * xw - xx + b * b;
    if (disc < 0.0) continue;
    const double sq = std::sqrt(disc);
    for (double r : {-xw - sq, -xw + sq})
      if (r > 0.0 && r < delta) out.push_back(r);
  }
}

SphereRule inner_rule(const TestFunction& u, const Point& x, const CubatureSpec& spec) {
  if (u.radial && spec.use_symmetry) {
    const double n = norm(x);
    return make_axisymmetric_rule(u.dim, n > 0.0 ? x : unit_axis(0), spec.sphere);
  }
  Point pole = u.gradient(x);
  if (!(norm(pole) > 0.0)) pole = norm(x) > 0.0 ? x : unit_axis(0);
  return make_sphere_rule(u.dim, pole, spec.sphere);
}

// Shared polar machinery: sum over directions of int_0^delta phi(r) dr / r with
// r = delta t^(1/gamma).
template <class Inner>
LocalValue polar_local(const TestFunction& u, const Point& x, double delta, double gamma,
                       const CubatureSpec& spec, Inner inner) {
  const SphereRule rule = inner_rule(u, x, spec);
  std::vector<std::vector<double>> tb(rule.size());
  std::vector<double> radii;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    radii.clear();
    crossing_radii(x, rule.directions[j], u.breakpoints, delta, radii);
    for (double r : radii) tb[j].push_back(std::pow(r / delta, gamma));
  }
  const double ux = u.value(x);
  const double inv_gamma = 1.0 / gamma;
  return graded_t_integral(
      rule.weights, tb,
      [&](std::size_t j, double t) {
        const double r = delta * std::pow(t, inv_gamma);
        if (!(r > 0.0)) return 0.0;
        const double diff = std::abs(ux - u.value(axpy(r, rule.directions[j], x)));
        return inner(diff, r) / (gamma * t);
      },
      spec);
}

struct OuterNodes {
  std::vector<Point> x;
  std::vector<double> w;
};

std::vector<double> outer_breaks(const TestFunction& u, double delta, bool symmetric) {
  std::vector<double> br;
  for (double b : u.breakpoints)
    for (double c : {b, b - delta, b + delta}) {
      if (c >= 0.0) br.push_back(c);
      if (symmetric && c > 0.0) br.push_back(-c);
    }
  return br;
}

// Composite panels, refined geometrically toward the kinks of u where the
// local energy is only Holder continuous.
NodeSet kink_graded_nodes(double a, double b, int order, double width, int levels,
                          const std::vector<double>& breaks, const std::vector<double>& kinks) {
  if (levels <= 0) return composite_nodes(a, b, order, width, breaks);
  auto is_kink = [&](double x) {
    for (double k : kinks)
      if (std::abs(x - k) <= 1e-14 * (1.0 + std::abs(k))) return true;
    return false;
  };
  std::vector<double> pts{a, b};
  for (double c : breaks)
    if (c > a && c < b) pts.push_back(c);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  NodeSet ns;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double lo = pts[k], hi = pts[k + 1];
    const bool ga = is_kink(lo), gb = is_kink(hi);
    const NodeSet part = (ga || gb) ? graded_nodes(lo, hi, order, levels, ga, gb)
                                    : composite_nodes(lo, hi, order, width);
    ns.x.insert(ns.x.end(), part.x.begin(), part.x.end());
    ns.w.insert(ns.w.end(), part.w.begin(), part.w.end());
  }
  return ns;
}

OuterNodes outer_nodes(const TestFunction& u, double delta, int order, double width, int levels) {
  OuterNodes on;
  const double L = u.support_radius + delta;
  // The origin is included for radial fields, where a cone tip may sit.
  std::vector<double> kinks;
  if (u.radial) kinks.push_back(0.0);
  for (double b : u.breakpoints) {
    kinks.push_back(b);
    if (!u.radial) kinks.push_back(-b);
  }
  if (u.radial) {
    const double area = sphere_constants(u.dim).surface_area;
    const NodeSet ns = kink_graded_nodes(0.0, L, order, width, levels, outer_breaks(u, delta, false), kinks);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      on.x.push_back({ns.x[i], 0.0, 0.0});
      on.w.push_back(area * std::pow(ns.x[i], u.dim - 1) * ns.w[i]);
    }
    return on;
  }
  const NodeSet ax = u.dim == 1
                        ? kink_graded_nodes(-L, L, order, width, levels, outer_breaks(u, delta, true), kinks)
                        : composite_nodes(-L, L, order, width, outer_breaks(u, delta, true));
  if (u.dim == 1) {
    for (std::size_t i = 0; i < ax.size(); ++i) {
      on.x.push_back({ax.x[i], 0.0, 0.0});
      on.w.push_back(ax.w[i]);
    }
    return on;
  }
  for (std::size_t i = 0; i < ax.size(); ++i)
    for (std::size_t j = 0; j < ax.size(); ++j) {
      if (u.dim == 2) {
        on.x.push_back({ax.x[i], ax.x[j], 0.0});
        on.w.push_back(ax.w[i] * ax.w[j]);
        continue;
      }
      for (std::size_t k = 0; k < ax.size(); ++k) {
        on.x.push_back({ax.x[i], ax.x[j], ax.x[k]});
        on.w.push_back(ax.w[i] * ax.w[j] * ax.w[k]);
      }
    }
  return on;
}

template <class Local>
EnergyBreakdown outer_total(const TestFunction& u, double delta, const CubatureSpec& spec, Local local) {
  EnergyBreakdown e;
  const OuterNodes on = outer_nodes(u, delta, spec.outer_order, spec.outer_panel, spec.outer_grading);
  std::vector<LocalValue> vals(on.x.size());
  parallel_for(on.x.size(), [&](std::size_t i) { vals[i] = local(on.x[i]); });
  std::vector<double> terms(on.x.size());
  for (std::size_t i = 0; i < on.x.size(); ++i) {
    terms[i] = on.w[i] * vals[i].value;
    e.inner_profile.push_back({on.x[i], vals[i].value, on.w[i]});
    if (!vals[i].converged) ++e.unconverged_nodes;
  }
  e.total = pairwise_sum(terms);
  e.node_count = on.x.size();
  if (spec.error_estimate) {
    const OuterNodes lo = outer_nodes(u, delta, spec.outer_order / 2, spec.outer_panel, spec.outer_grading);
    std::vector<double> lv(lo.x.size());
    parallel_for(lo.x.size(), [&](std::size_t i) { lv[i] = lo.w[i] * local(lo.x[i]).value; });
    e.quadrature_error_estimate = std::abs(e.total - pairwise_sum(lv));
  }
  if (e.unconverged_nodes > 0)
    e.warnings.push_back("radial panels unconverged at " + std::to_string(e.unconverged_nodes) +
                         " outer nodes");
  return e;
}

}  // namespace

LocalValue psi_local(const TestFunction& u, const Point& x, double s, const OrliczFunction& g,
                     double delta, const CubatureSpec& spec) {
  check_psi_domain(s, delta);
  spec.validate();
  return polar_local(u, x, delta, 1.0 - s, spec,
                     [&](double diff, double r) { return g(diff / std::pow(r, s)); });
}

EnergyBreakdown psi_total(const TestFunction& u, double s, const OrliczFunction& g, double delta,
                          const CubatureSpec& spec) {
  check_psi_domain(s, delta);
  spec.validate();
  return outer_total(u, delta, spec, [&](const Point& x) {
    return polar_local(u, x, delta, 1.0 - s, spec,
                       [&](double diff, double r) { return g(diff / std::pow(r, s)); });
  });
}

void write_profile_csv(std::ostream& out, const EnergyBreakdown& e, int dim) {
  CsvWriter w(out);
  std::vector<std::string> head;
  for (int i = 0; i < dim; ++i) head.push_back("x" + std::to_string(i + 1));
  head.push_back("inner_value");
  w.header(head);
  for (const auto& p : e.inner_profile) {
    std::vector<std::string> row;
    for (int i = 0; i < dim; ++i) row.push_back(format_double(p.x[i]));
    row.push_back(format_double(p.value));
    w.row(row);
  }
}

std::string summary_record(const EnergyBreakdown& e) {
  std::ostringstream os;
  os << "{\"total\": " << format_double(e.total)
     << ", \"error_estimate\": " << format_double(e.quadrature_error_estimate)
     << ", \"node_count\": " << e.node_count << "}";
  return os.str();
}

namespace {

double gk(const std::function<double(double)>& f, double a, double b) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, 1e-13);
}

// int F(x) dx over the support of u, where F is local in x.
double support_integral(const TestFunction& u, const std::function<double(const Point&)>& F) {
  const double R = u.support_radius;
  if (u.radial || u.dim == 1) {
    std::vector<double> cuts;
    const double lo = u.radial ? 0.0 : -R;
    cuts.push_back(lo);
    cuts.push_back(R);
    for (double b : u.breakpoints) {
      if (b > lo && b < R) cuts.push_back(b);
      if (!u.radial && -b > lo && -b < R) cuts.push_back(-b);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    const double area = u.radial ? sphere_constants(u.dim).surface_area : 1.0;
    const int dim = u.dim;
    const bool radial = u.radial;
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      s += gk([&](double r) { return (radial ? std::pow(r, dim - 1) : 1.0) * F(Point{r, 0.0, 0.0}); },
              cuts[i], cuts[i + 1]);
    return area * s;
  }
  const NodeSet ax = composite_nodes(-R, R, 16, R / 8.0);
  double s = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i)
    for (std::size_t j = 0; j < ax.size(); ++j) {
      if (u.dim == 2) {
        s += ax.w[i] * ax.w[j] * F(Point{ax.x[i], ax.x[j], 0.0});
        continue;
      }
      for (std::size_t k = 0; k < ax.size(); ++k)
        s += ax.w[i] * ax.w[j] * ax.w[k] * F(Point{ax.x[i], ax.x[j], ax.x[k]});
    }
  return s;
}

}  // namespace

double phi_g_norm(const TestFunction& u, const OrliczFunction& g, double c) {
  if (!(c >= 0.0)) throw DomainError("phi_g_norm: scale must be >= 0");
  return support_integral(u, [&](const Point& x) { return g(c * std::abs(u.value(x))); });
}

double phi_g_gradient(const TestFunction& u, const OrliczFunction& g, double c) {
  if (!(c >= 0.0)) throw DomainError("phi_g_gradient: scale must be >= 0");
  return support_integral(u, [&](const Point& x) { return g(c * norm(u.gradient(x))); });
}

Kernel power_kernel(double exponent) {
  return {[exponent](double r) { return std::pow(r, -exponent); }, -exponent,
          "r^-" + format_double(exponent)};
}

Kernel constant_kernel() {
  return {[](double) { return 1.0; }, 0.0, "1"};
}

double psi_kernel_total(const TestFunction& u, const OrliczFunction& g, const Kernel& j,
                        double delta, const CubatureSpec& spec) {
  spec.validate();
  const double p = g.index();
  const int n = u.dim;
  if (!(n + p + j.q > 0.0)) throw DomainError("psi_kernel_total: need N + p + q > 0");
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("delta must lie in (0, 1]");
  const double gamma = (n + p + j.q) / p;
  return outer_total(u, delta, spec, [&](const Point& x) {
           return polar_local(u, x, delta, gamma, spec, [&](double diff, double r) {
             return g(diff) * j.J(r) * std::pow(r, n);
           });
         }).total;
}

double phi_numeric(double a, double s, double delta, const OrliczFunction& g, int dim,
                   const CubatureSpec& spec, const Point& e) {
  if (!(a >= 0.0)) throw DomainError("phi_numeric: a must be >= 0");
  if (!(s > 0.0 && s < 1.0)) throw DomainError("phi_numeric: s must lie in (0,1)");
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("delta must lie in (0, 1]");
  spec.validate();
  if (a == 0.0) return 0.0;
  const double c = a * std::pow(delta, 1.0 - s);
  std::vector<double> zb;
  for (double k : g.kinks())
    if (k / c < 1.0) zb.push_back(k / c);
  const SphereRule rule = spec.use_symmetry ? make_axisymmetric_rule(dim, e, spec.sphere, zb)
                                            : make_sphere_rule(dim, e, spec.sphere, zb);
  const Point en = make_frame(dim, e).e;
  std::vector<double> z(rule.size());
  std::vector<std::vector<double>> tb(rule.size());
  for (std::size_t j = 0; j < rule.size(); ++j) {
    z[j] = std::abs(dot(rule.directions[j], en));
    for (double k : g.kinks())
      if (c * z[j] > k) tb[j].push_back(k / (c * z[j]));
  }
  const double inv = 1.0 / (1.0 - s);
  return graded_t_integral(
             rule.weights, tb,
             [&](std::size_t j, double t) { return g(c * z[j] * t) * inv / t; }, spec)
      .value;
}

}  // namespace nonlocal

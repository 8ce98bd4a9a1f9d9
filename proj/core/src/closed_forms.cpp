#include "nonlocal/closed_forms.hpp"

#include <cmath>
#include <numbers>

#include "nonlocal/errors.hpp"
#include "nonlocal/nonlocal_quadrature.hpp"
#include "nonlocal/special_functions.hpp"

namespace nonlocal {

namespace {

const SphereSpec kMomentRule{24, 24, 4};

double raw_k(int dim, double p) {
  return sphere_constants(dim).surface_area * normalized_sphere_moment(dim, p);
}

// int_{lo <= |w.e| <= hi} |w.e|^p dS.
double moment(int dim, double p, double lo, double hi) {
  if (dim == 3) return 4.0 * std::numbers::pi * (std::pow(hi, p + 1) - std::pow(lo, p + 1)) / (p + 1);
  return zonal_integral(dim, [p](double z) { return std::pow(z, p); }, lo, hi, kMomentRule);
}

// int_{lo <= |w.e| <= hi} |w.e|^p ln|w.e| dS.
double log_moment(int dim, double p, double lo, double hi) {
  if (dim == 3) {
    auto F = [p](double z) {
      return z > 0.0 ? std::pow(z, p + 1) * (std::log(z) / (p + 1) - 1.0 / ((p + 1) * (p + 1))) : 0.0;
    };
    return 4.0 * std::numbers::pi * (F(hi) - F(lo));
  }
  return zonal_integral(
      dim, [p](double z) { return z > 0.0 ? std::pow(z, p) * std::log(z) : 0.0; }, lo, hi, kMomentRule);
}

double area(int dim, double lo, double hi) {
  if (dim == 3) return 4.0 * std::numbers::pi * (hi - lo);
  return zonal_integral(dim, [](double) { return 1.0; }, lo, hi, kMomentRule);
}

// int_S H(c |w.e|) dS on the small-argument branch (all arguments <= 1).
double zonal_h_small(OrliczKind kind, double c, int dim, double p) {
  switch (kind) {
    case OrliczKind::Power:
      return raw_k(dim, p) * std::pow(c, p) / p;
    case OrliczKind::PowerLog:
      return std::pow(c, p) / p * (raw_k(dim, p) * (1.0 - std::log(c) + 1.0 / p) + k_ln_constant(dim, p));
    case OrliczKind::MaxPower:
      return raw_k(dim, p) * std::pow(c, p) / p;
    default:
      break;
  }
  throw DomainError("closed form not available for this kind");
}

// Large-argument branch: split the sphere at |w.e| = 1/c.
double zonal_h_large(OrliczKind kind, double c, int dim, double p, double q) {
  const double zs = 1.0 / c;
  switch (kind) {
    case OrliczKind::Power:
      return raw_k(dim, p) * std::pow(c, p) / p;
    case OrliczKind::PowerLog: {
      const double cp = std::pow(c, p), lc = std::log(c);
      const double low = cp / p * ((1.0 - lc + 1.0 / p) * moment(dim, p, 0.0, zs) - log_moment(dim, p, 0.0, zs));
      const double high = cp / p * ((1.0 + lc - 1.0 / p) * moment(dim, p, zs, 1.0) + log_moment(dim, p, zs, 1.0)) +
                          2.0 / (p * p) * area(dim, zs, 1.0);
      return low + high;
    }
    case OrliczKind::MaxPower:
      return std::pow(c, p) / p * moment(dim, p, 0.0, zs) + std::pow(c, q) / q * moment(dim, q, zs, 1.0) +
             (1.0 / p - 1.0 / q) * area(dim, zs, 1.0);
    default:
      break;
  }
  throw DomainError("closed form not available for this kind");
}

void check_params(OrliczKind kind, int dim, double p, double q) {
  if (dim < 1 || dim > 3) throw DomainError("dimension must be 1, 2 or 3");
  if (!(p > 1.0)) throw DomainError("closed form: p must be > 1");
  if (kind == OrliczKind::PowerLog && q != 1.0) throw DomainError("PowerLog closed form needs q = 1");
  if (kind == OrliczKind::MaxPower && !(q > p)) throw DomainError("MaxPower closed form needs high > low");
  if (kind == OrliczKind::Custom) throw DomainError("no closed form for custom G");
}

double zonal_h(OrliczKind kind, double c, int dim, double p, double q) {
  check_params(kind, dim, p, q);
  if (c == 0.0) return 0.0;
  if (kind != OrliczKind::Power) {
    const double a = zonal_h_small(kind, 1.0, dim, p), b = zonal_h_large(kind, 1.0, dim, p, q);
    if (std::abs(a - b) > 1e-9 * std::abs(a))
      throw ConsistencyError("closed-form branches disagree at the boundary");
  }
  return c <= 1.0 ? zonal_h_small(kind, c, dim, p) : zonal_h_large(kind, c, dim, p, q);
}

}  // namespace

double phi_closed_form(OrliczKind kind, double a, double s, double delta, int dim, double p, double q) {
  if (!(a >= 0.0)) throw DomainError("phi_closed_form: a must be >= 0");
  if (!(s > 0.0 && s < 1.0)) throw DomainError("phi_closed_form: s must lie in (0,1)");
  if (!(delta > 0.0)) throw DomainError("phi_closed_form: delta must be > 0");
  return zonal_h(kind, a * std::pow(delta, 1.0 - s), dim, p, q) / (1.0 - s);
}

double phi_closed_form(const OrliczFunction& g, double a, double s, double delta, int dim) {
  return phi_closed_form(g.kind(), a, s, delta, dim, g.index(), g.kind() == OrliczKind::Power ? 1.0 : g.secondary());
}

double tilde_g_closed_form(OrliczKind kind, double a, int dim, double p, double q) {
  if (!(a >= 0.0)) throw DomainError("tilde_g_closed_form: a must be >= 0");
  return zonal_h(kind, a, dim, p, q);
}

double tilde_g_closed_form(const OrliczFunction& g, double a, int dim) {
  return tilde_g_closed_form(g.kind(), a, dim, g.index(), g.kind() == OrliczKind::Power ? 1.0 : g.secondary());
}

}  // namespace nonlocal

#include "nonlocal/localization.hpp"

#include <cmath>
#include <limits>

#include "nonlocal/csv.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/sphere.hpp"

namespace nonlocal {

std::vector<double> DeltaSchedule::deltas() const {
  std::vector<double> d;
  for (int k = 0; k < count; ++k) d.push_back(delta0 * std::pow(ratio, k));
  return d;
}

void DeltaSchedule::validate(double s) const {
  if (!(delta0 > 0.0 && delta0 <= 1.0)) throw DomainError("schedule: delta0 must lie in (0, 1]");
  if (!(ratio > 0.0 && ratio < 1.0)) throw DomainError("schedule: ratio must lie in (0, 1)");
  if (count < 4) throw DomainError("schedule: count must be >= 4");
  const double last = delta0 * std::pow(ratio, count - 1);
  if (!(std::pow(last, 1.0 - s) > 1e-300)) throw ScheduleTooDeep("schedule: delta^(1-s) underflows");
}

double localization_prefactor(const OrliczFunction& g, double s, double delta) {
  const double t = std::pow(delta, 1.0 - s);
  const double gt = t > 0.0 ? g(t) : 0.0;
  if (!(gt > 1e-300)) throw ScheduleTooDeep("G(delta^(1-s)) underflows");
  return g.index() * (1.0 - s) / gt;
}

double scaled_psi(const TestFunction& u, const OrliczFunction& g, double s, double delta,
                  const CubatureSpec& spec) {
  const double pre = localization_prefactor(g, s, delta);
  return pre * psi_total(u, s, g, delta, spec).total;
}

namespace {

void finish_report(ConvergenceReport& rep, const std::vector<SeriesPoint>& series, double target,
                   double target_norm, double match_tol) {
  rep.series = series;
  rep.target = target;
  rep.target_normalized = target_norm;
  if (rep.diverging || !rep.fitted_limit) {
    rep.relative_error = std::isinf(target) ? 0.0 : std::numeric_limits<double>::infinity();
    rep.matched_convention = std::isinf(target) ? "both" : "neither";
    return;
  }
  const double L = *rep.fitted_limit;
  if (std::isinf(target)) {
    rep.relative_error = std::numeric_limits<double>::infinity();
    rep.matched_convention = "neither";
    rep.warnings.push_back("finite limit although the local energy is infinite");
    return;
  }
  rep.relative_error = target != 0.0 ? std::abs(L - target) / std::abs(target) : std::abs(L);
  const double err_norm = target_norm != 0.0 ? std::abs(L - target_norm) / std::abs(target_norm) : std::abs(L);
  const bool raw_ok = rep.relative_error <= match_tol;
  const bool norm_ok = err_norm <= match_tol;
  rep.matched_convention = raw_ok ? (norm_ok ? "both" : "raw") : (norm_ok ? "normalized" : "neither");
}

template <class Scaled>
ConvergenceReport run_schedule(const DeltaSchedule& schedule, double s, Scaled scaled_at,
                               double target, double target_norm, double match_tol) {
  schedule.validate(s);
  std::vector<SeriesPoint> series;
  std::vector<std::pair<double, double>> pts;
  std::vector<std::string> warnings;
  for (double d : schedule.deltas()) {
    const SeriesPoint sp = scaled_at(d, warnings);
    series.push_back(sp);
    pts.emplace_back(d, sp.scaled);
  }
  ConvergenceReport rep = limit_extrapolate(pts);
  rep.warnings = warnings;
  finish_report(rep, series, target, target_norm, match_tol);
  return rep;
}

}  // namespace

ConvergenceReport verify_main_theorem(const TestFunction& u, const OrliczFunction& g, double s,
                                      const DeltaSchedule& schedule, const CubatureSpec& spec,
                                      double match_tol) {
  const double p = g.index();
  const double energy = gradient_energy(u, p);
  const double raw = k_constant(u.dim, p, KConvention::Raw);
  const double area = sphere_constants(u.dim).surface_area;
  const double target = std::isinf(energy) ? energy : raw * energy;
  const double target_norm = std::isinf(energy) ? energy : raw / area * energy;
  return run_schedule(
      schedule, s,
      [&](double d, std::vector<std::string>& warnings) {
        const EnergyBreakdown e = psi_total(u, s, g, d, spec);
        for (const auto& w : e.warnings) warnings.push_back("delta=" + format_double(d) + ": " + w);
        return SeriesPoint{d, e.total, localization_prefactor(g, s, d) * e.total};
      },
      target, target_norm, match_tol);
}

ConvergenceReport verify_correa(const TestFunction& u, const OrliczFunction& g, const Kernel& j,
                                const DeltaSchedule& schedule, const CubatureSpec& spec,
                                double match_tol) {
  const double p = g.index();
  const int n = u.dim;
  const double energy = gradient_energy(u, p);
  const double raw = k_constant(n, p, KConvention::Raw);
  const double area = sphere_constants(n).surface_area;
  const double target = std::isinf(energy) ? energy : raw * energy;
  const double target_norm = std::isinf(energy) ? energy : raw / area * energy;
  // The s argument only matters for the schedule depth check.
  return run_schedule(
      schedule, 0.5,
      [&](double d, std::vector<std::string>&) {
        const double psi = psi_kernel_total(u, g, j, d, spec);
        const double denom = g(d) * j.J(d) * std::pow(d, n);
        if (!(denom > 1e-300)) throw ScheduleTooDeep("G(delta) J(delta) delta^N underflows");
        return SeriesPoint{d, psi, (n + p + j.q) / denom * psi};
      },
      target, target_norm, match_tol);
}

const char* to_string(InequalityCheck c) {
  switch (c) {
    case InequalityCheck::GradientBound: return "gradient-bound";
    case InequalityCheck::MollifierMonotone: return "mollifier-monotone";
    case InequalityCheck::Truncation: return "truncation";
    case InequalityCheck::Equicontinuity: return "equicontinuity";
    case InequalityCheck::HorizonComparison: return "horizon-comparison";
  }
  return "?";
}

InequalityCheck parse_inequality_check(const std::string& s) {
  for (auto c : {InequalityCheck::GradientBound, InequalityCheck::MollifierMonotone,
                 InequalityCheck::Truncation, InequalityCheck::Equicontinuity,
                 InequalityCheck::HorizonComparison})
    if (s == to_string(c)) return c;
  throw DomainError("unknown inequality check '" + s + "'");
}

InequalityResult inequality_suite(InequalityCheck check, const TestFunction& u,
                                  const OrliczFunction& g, const InequalityParams& prm,
                                  const CubatureSpec& spec) {
  const double s = prm.s, d = prm.delta;
  const SphereConstants sc = sphere_constants(u.dim);
  InequalityResult res{check, 0.0, 0.0, 0.0, false, ""};
  auto doubling = [&] { return check_axioms(g).doubling_constant; };

  switch (check) {
    case InequalityCheck::GradientBound: {
      res.lhs = psi_total(u, s, g, d, spec).total;
      res.rhs = sc.surface_area / (1.0 - s) * phi_g_gradient(u, g, std::pow(d, 1.0 - s));
      res.detail = "delta=" + format_double(d);
      break;
    }
    case InequalityCheck::MollifierMonotone: {
      const TestFunction ur = mollify(u, MollifierSpec{prm.r});
      res.lhs = psi_total(ur, s, g, d, spec).total;
      res.rhs = psi_total(u, s, g, d, spec).total;
      res.detail = "r=" + format_double(prm.r) + " delta=" + format_double(d);
      break;
    }
    case InequalityCheck::Truncation: {
      const double c = doubling();
      const TestFunction uk = truncate(u, prm.k);
      res.lhs = psi_total(uk, s, g, d, spec).total;
      res.rhs = 0.5 * c * psi_total(u, s, g, d, spec).total +
                sc.surface_area * c * c / (2.0 * prm.k * (1.0 - s)) * phi_g_norm(u, g, std::pow(d, 1.0 - s));
      res.detail = "k=" + std::to_string(prm.k) + " c=" + format_double(c);
      break;
    }
    case InequalityCheck::Equicontinuity: {
      const double h = prm.h;
      if (!(h > 0.0 && 2.0 * h <= d && h < 0.5))
        throw DomainError("equicontinuity needs 0 < h < 1/2 and 2h <= delta");
      const double c = doubling();
      const double C = std::pow(2.0, u.dim + s + 1.0) * c / sc.ball_volume;
      const TestFunction diff = shifted_difference(u, Point{h, 0.0, 0.0});
      res.lhs = phi_g_norm(diff, g);
      res.rhs = C * std::pow(h, s) * psi_total(u, s, g, d, spec).total;
      res.detail = "h=" + format_double(h) + " C=" + format_double(C);
      break;
    }
    case InequalityCheck::HorizonComparison: {
      const double d1 = d, d2 = prm.delta_small;
      if (!(d2 > 0.0 && d2 < d1)) throw DomainError("horizon comparison needs 0 < delta_small < delta");
      const double c = doubling();
      const double g1 = g(std::pow(d1, 1.0 - s)), g2 = g(std::pow(d2, 1.0 - s));
      res.lhs = psi_total(u, s, g, d1, spec).total / g1;
      res.rhs = psi_total(u, s, g, d2, spec).total / g2 +
                c * sc.surface_area / s * (1.0 - std::pow(d2 / d1, s)) * phi_g_norm(u, g, std::pow(d2, -s)) / g2;
      res.detail = "d2=" + format_double(d2) + " d1=" + format_double(d1);
      break;
    }
  }
  res.rhs *= kInequalitySlack;
  res.margin = res.rhs > 0.0 ? (res.rhs - res.lhs) / res.rhs : -res.lhs;
  res.pass = res.lhs <= res.rhs;
  return res;
}

std::vector<InequalityResult> run_inequality_suite(const TestFunction& u, const OrliczFunction& g,
                                                   const InequalityParams& params,
                                                   const CubatureSpec& spec) {
  std::vector<InequalityResult> out;
  for (auto c : {InequalityCheck::GradientBound, InequalityCheck::MollifierMonotone,
                 InequalityCheck::Truncation})
    out.push_back(inequality_suite(c, u, g, params, spec));
  for (double h : {params.h, 0.5 * params.delta}) {
    InequalityParams p = params;
    p.h = h;
    out.push_back(inequality_suite(InequalityCheck::Equicontinuity, u, g, p, spec));
  }
  out.push_back(inequality_suite(InequalityCheck::HorizonComparison, u, g, params, spec));
  return out;
}

}  // namespace nonlocal

#include "nonlocal/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

// Boost 1.74 pchip calls isnan unqualified.
namespace boost::math::interpolators {
using std::isnan;
}
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/tools/minima.hpp>

#include "nonlocal/errors.hpp"
#include "nonlocal/extrapolation.hpp"
#include "nonlocal/gauss_legendre.hpp"

namespace nonlocal {

const char* to_string(OrliczKind k) {
  switch (k) {
    case OrliczKind::Power: return "Power";
    case OrliczKind::PowerLog: return "PowerLog";
    case OrliczKind::MaxPower: return "MaxPower";
    case OrliczKind::Custom: return "Custom";
  }
  return "?";
}

struct OrliczFunction::Custom {
  std::function<double(double)> value;
  std::function<double(double)> slope;
};

namespace {

std::string fmt_num(double x) {
  std::string s = std::to_string(x);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

void check_t(double t) {
  if (!std::isfinite(t) || t < 0.0) throw DomainError("Orlicz argument must be finite and >= 0");
}

}  // namespace

OrliczFunction OrliczFunction::power(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("Power: p must be > 1");
  OrliczFunction g;
  g.kind_ = OrliczKind::Power;
  g.p_ = p;
  g.name_ = "Power(" + fmt_num(p) + ")";
  return g;
}

OrliczFunction OrliczFunction::power_log(double p, double q) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("PowerLog: p must be > 1");
  if (!(q >= 0.0) || !(q <= p)) throw DomainError("PowerLog: need 0 <= q <= p for monotonicity");
  OrliczFunction g;
  g.kind_ = OrliczKind::PowerLog;
  g.p_ = p;
  g.q_ = q;
  g.kinks_ = {1.0};
  g.name_ = "PowerLog(" + fmt_num(p) + "," + fmt_num(q) + ")";
  return g;
}

OrliczFunction OrliczFunction::max_power(double low, double high) {
  if (!(low > 1.0) || !(high > low) || !std::isfinite(high))
    throw DomainError("MaxPower: need 1 < low < high");
  OrliczFunction g;
  g.kind_ = OrliczKind::MaxPower;
  g.p_ = low;
  g.q_ = high;
  g.kinks_ = {1.0};
  g.name_ = "MaxPower(" + fmt_num(low) + "," + fmt_num(high) + ")";
  return g;
}

OrliczFunction OrliczFunction::from_callable(std::function<double(double)> value,
                                             std::function<double(double)> slope,
                                             std::string name) {
  if (!value) throw DomainError("Custom: value map required");
  if (!slope) {
    slope = [value](double t) {
      const double h = 1e-6 * std::max(t, 1e-300);
      return (value(t + h) - value(std::max(0.0, t - h))) / (t + h - std::max(0.0, t - h));
    };
  }
  OrliczFunction g;
  g.kind_ = OrliczKind::Custom;
  g.name_ = std::move(name);
  g.custom_ = std::make_shared<Custom>(Custom{std::move(value), std::move(slope)});
  std::vector<double> deltas;
  for (int k = 2; k <= 12; ++k) deltas.push_back(std::pow(10.0, -k));
  g.p_ = karamata_index(g, deltas);
  double lo = std::numeric_limits<double>::infinity();
  for (double t : LogGrid{}.points()) lo = std::min(lo, g.ell(t));
  g.ell_min_ = lo;
  return g;
}

OrliczFunction OrliczFunction::from_table(const SampledTable& table, std::string name) {
  if (table.t.size() < 4) throw DomainError("Custom table needs at least 4 rows");
  std::vector<double> X, Y;
  for (std::size_t i = 0; i < table.t.size(); ++i) {
    X.push_back(std::log(table.t[i]));
    Y.push_back(std::log(table.value[i]));
  }
  const double x0 = X.front(), y0 = Y.front(), xn = X.back(), yn = Y.back();
  using boost::math::interpolators::pchip;
  auto spline = std::make_shared<pchip<std::vector<double>>>(std::move(X), std::move(Y));
  const double s0 = spline->prime(x0), sn = spline->prime(xn);
  if (!(s0 > 1.0)) throw InvalidFunctionError("Custom table: log-log slope at the first sample must exceed 1");

  auto logval = [=](double x) {
    if (x <= x0) return y0 + s0 * (x - x0);
    if (x >= xn) return yn + sn * (x - xn);
    return (*spline)(x);
  };
  auto logslope = [=](double x) {
    if (x < x0) return s0;
    if (x >= xn) return sn;
    return spline->prime(x);
  };
  auto value = [=](double t) { return t > 0.0 ? std::exp(logval(std::log(t))) : 0.0; };
  auto slope = [=](double t) {
    if (t <= 0.0) return 0.0;
    const double x = std::log(t);
    return std::exp(logval(x)) * logslope(x) / t;
  };

  OrliczFunction g;
  g.kind_ = OrliczKind::Custom;
  g.name_ = std::move(name);
  g.custom_ = std::make_shared<Custom>(Custom{value, slope});
  std::vector<double> deltas;
  const double t0 = table.t.front();
  const double top = std::min(0.5, table.t.back());
  for (int k = 0; k < 8; ++k) deltas.push_back(top * std::pow(t0 / top, k / 7.0));
  g.p_ = top > t0 ? karamata_index(g, deltas) : s0;
  double lo = std::numeric_limits<double>::infinity();
  for (double t : LogGrid{}.points()) lo = std::min(lo, g.ell(t));
  g.ell_min_ = lo;
  return g;
}

double OrliczFunction::operator()(double t) const {
  check_t(t);
  if (t == 0.0) return 0.0;
  switch (kind_) {
    case OrliczKind::Power:
      return std::pow(t, p_);
    case OrliczKind::PowerLog: {
      const double l = 1.0 + std::abs(std::log(t));
      return std::pow(t, p_) * (q_ == 1.0 ? l : std::pow(l, q_));
    }
    case OrliczKind::MaxPower:
      return t < 1.0 ? std::pow(t, p_) : std::pow(t, q_);
    case OrliczKind::Custom:
      return custom_->value(t);
  }
  return 0.0;
}

double OrliczFunction::derivative(double t) const {
  check_t(t);
  if (t == 0.0) return 0.0;
  switch (kind_) {
    case OrliczKind::Power:
      return p_ * std::pow(t, p_ - 1.0);
    case OrliczKind::PowerLog: {
      const double lt = std::log(t);
      if (t < 1.0) {
        const double l = 1.0 - lt;
        return std::pow(t, p_ - 1.0) * std::pow(l, q_ - 1.0) * (p_ * l - q_);
      }
      const double l = 1.0 + lt;
      return std::pow(t, p_ - 1.0) * std::pow(l, q_ - 1.0) * (p_ * l + q_);
    }
    case OrliczKind::MaxPower:
      return t < 1.0 ? p_ * std::pow(t, p_ - 1.0) : q_ * std::pow(t, q_ - 1.0);
    case OrliczKind::Custom:
      return custom_->slope(t);
  }
  return 0.0;
}

double OrliczFunction::ell(double t) const {
  if (!(t > 0.0)) throw DomainError("ell: t must be > 0");
  return (*this)(t) / std::pow(t, p_);
}

std::pair<double, double> eval_pair(const OrliczFunction& g, double t) {
  return {g(t), g.derivative(t)};
}

std::vector<double> LogGrid::points() const {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) throw DomainError("invalid log grid");
  std::vector<double> pts(count);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < count; ++i) pts[i] = std::exp(a + (b - a) * i / (count - 1));
  return pts;
}

GrowthReport growth_exponents(const OrliczFunction& g, const LogGrid& grid, double tol) {
  GrowthReport rep;
  rep.sample_grid = grid.points();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double t : rep.sample_grid) {
    const auto [v, d] = eval_pair(g, t);
    if (!(v > 0.0)) throw InvalidFunctionError("G vanishes at a positive grid point");
    const double q = t * d / v;
    rep.quotient_samples.push_back(q);
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  rep.p_minus = lo - tol;
  rep.p_plus = hi + tol;
  return rep;
}

AxiomReport check_axioms(const OrliczFunction& g, const LogGrid& grid) {
  AxiomReport rep{};
  const auto pts = grid.points();
  const GrowthReport gr = growth_exponents(g, grid);
  rep.doubling_constant = 0.0;
  rep.lower_doubling = std::numeric_limits<double>::infinity();
  rep.increasing = true;
  rep.ell_min = std::numeric_limits<double>::infinity();
  double prev = 0.0;
  for (double t : pts) {
    const double v = g(t);
    const double r = g(2.0 * t) / v;
    rep.doubling_constant = std::max(rep.doubling_constant, r);
    rep.lower_doubling = std::min(rep.lower_doubling, r);
    if (!(v > prev)) rep.increasing = false;
    prev = v;
    rep.ell_min = std::min(rep.ell_min, g.ell(t));
  }
  rep.nabla2_constant = std::pow(2.0, gr.p_minus);
  rep.nabla2_holds = rep.lower_doubling >= rep.nabla2_constant * (1.0 - 1e-9);

  // Convexity: G' non-decreasing on a grid ten times denser.
  LogGrid fine = grid;
  fine.count = grid.count * 10;
  const auto fp = fine.points();
  rep.convex = true;
  rep.worst_second_difference = 0.0;
  double dprev = g.derivative(fp[0]);
  std::size_t run_start = 0;
  bool in_run = false;
  for (std::size_t i = 1; i < fp.size(); ++i) {
    const double d = g.derivative(fp[i]);
    const double rel = (d - dprev) / std::max(std::abs(d), std::abs(dprev));
    const bool defect = rel < -1e-12;
    if (defect) {
      rep.convex = false;
      rep.worst_second_difference = std::min(rep.worst_second_difference, rel);
      if (!in_run) run_start = i - 1;
      in_run = true;
    } else if (in_run) {
      rep.nonconvex_intervals.emplace_back(fp[run_start], fp[i - 1]);
      in_run = false;
    }
    dprev = d;
  }
  if (in_run) rep.nonconvex_intervals.emplace_back(fp[run_start], fp.back());

  rep.superlinear_at_zero = true;
  double last = std::numeric_limits<double>::infinity(), first = 0.0;
  for (int k = 1; k <= 12; ++k) {
    const double t = std::pow(10.0, -k);
    const double r = g(t) / t;
    if (k == 1) first = r;
    if (!(r < last)) rep.superlinear_at_zero = false;
    last = r;
  }
  if (!(last < 1e-2 * first)) rep.superlinear_at_zero = false;
  return rep;
}

double conjugate(const OrliczFunction& g, double a) {
  if (!std::isfinite(a) || a < 0.0) throw DomainError("conjugate: a must be finite and >= 0");
  if (a == 0.0) return 0.0;
  double hi = 1.0;
  for (int i = 0; i < 4000 && g(hi) < 2.0 * a * hi; ++i) hi *= 2.0;
  while (hi > 1e-300 && g(hi * 0.5) >= 2.0 * a * hi * 0.5) hi *= 0.5;
  auto obj = [&](double t) { return a * t - g(t); };
  const int n = 2000;
  const double lo = hi * 1e-14;
  std::vector<double> ts(n);
  for (int i = 0; i < n; ++i) ts[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double v = obj(ts[i]);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double bl = ts[std::max(0, best - 1)], bh = ts[std::min(n - 1, best + 1)];
  const auto m = boost::math::tools::brent_find_minima([&](double t) { return -obj(t); }, bl, bh, 60);
  double at_kink = 0.0;
  for (double k : g.kinks()) at_kink = std::max(at_kink, obj(k));
  return std::max({0.0, best_val, -m.second, at_kink});
}

IndexReport rv_index_at_zero(const OrliczFunction& g, const std::vector<double>& lambdas,
                             const std::vector<double>& ts, double tol) {
  if (lambdas.size() < 2) throw DomainError("rv_index_at_zero: need at least 2 lambdas");
  for (double l : lambdas)
    if (!(l >= 0.1 && l <= 10.0)) throw DomainError("rv_index_at_zero: lambdas must lie in [0.1, 10]");
  if (ts.size() < 5) throw DomainError("rv_index_at_zero: need at least 5 t values");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ts[i] > 0.0 && ts[i] < 1.0)) throw DomainError("rv_index_at_zero: t must lie in (0,1)");
    if (i > 0 && !(ts[i] < ts[i - 1])) throw DomainError("rv_index_at_zero: t must decrease");
  }
  if (ts.back() > 1e-8) throw DomainError("rv_index_at_zero: schedule must reach 1e-8");

  IndexReport rep{};
  rep.t_schedule = ts;
  for (double t : ts) {
    const double gt = g(t);
    double sxy = 0.0, sxx = 0.0;
    for (double l : lambdas) {
      const double x = std::log(l);
      sxy += x * std::log(g(l * t) / gt);
      sxx += x * x;
    }
    rep.slopes.push_back(sxy / sxx);
  }

  // Quadratic in x = 1/ln(1/t) on a window of four, intercept is the index.
  auto extrapolate = [&](std::size_t end) {
    double A[3][3] = {}, b[3] = {};
    for (std::size_t k = end - 4; k < end; ++k) {
      const double x = 1.0 / std::log(1.0 / ts[k]);
      const double phi[3] = {1.0, x, x * x};
      for (int i = 0; i < 3; ++i) {
        b[i] += phi[i] * rep.slopes[k];
        for (int j = 0; j < 3; ++j) A[i][j] += phi[i] * phi[j];
      }
    }
    // Gaussian elimination on the 3x3 normal equations.
    for (int c = 0; c < 3; ++c)
      for (int r = c + 1; r < 3; ++r) {
        const double f = A[r][c] / A[c][c];
        for (int j = c; j < 3; ++j) A[r][j] -= f * A[c][j];
        b[r] -= f * b[c];
      }
    double coef[3];
    for (int i = 2; i >= 0; --i) {
      double s = b[i];
      for (int j = i + 1; j < 3; ++j) s -= A[i][j] * coef[j];
      coef[i] = s / A[i][i];
    }
    return coef[0];
  };

  double spread_raw = 0.0;
  for (std::size_t k = ts.size() - 4; k < ts.size(); ++k)
    spread_raw = std::max(spread_raw, std::abs(rep.slopes[k] - rep.slopes.back()));
  if (spread_raw < 1e-12) {
    rep.index = rep.slopes.back();
    rep.window_spread = spread_raw;
  } else {
    const double e1 = extrapolate(ts.size());
    const double e0 = extrapolate(ts.size() - 1);
    rep.index = e1;
    rep.window_spread = std::abs(e1 - e0);
  }
  if (!(rep.window_spread <= tol) || !std::isfinite(rep.index))
    throw NonRegularVariation("index estimate unstable across the t schedule", rep.window_spread);

  const double t = ts.back(), gt = g(t);
  rep.uniform_deviation = 0.0;
  for (double l : lambdas) {
    const double lp = std::pow(l, rep.index);
    rep.uniform_deviation = std::max(rep.uniform_deviation, std::abs(g(l * t) / gt - lp) / lp);
  }
  return rep;
}

IndexReport rv_index_at_zero(const OrliczFunction& g) {
  std::vector<double> lambdas, ts;
  for (int i = 0; i <= 20; ++i) lambdas.push_back(std::pow(10.0, -1.0 + i / 10.0));
  for (int k = 2; k <= 12; ++k) ts.push_back(std::pow(10.0, -k));
  return rv_index_at_zero(g, lambdas, ts);
}

namespace {

double karamata_integral(const OrliczFunction& g, double delta, int order) {
  const GaussRule& rule = gauss_legendre(order);
  auto panel = [&](double a, double b) {
    double s = 0.0;
    std::vector<double> cuts{a};
    for (double k : g.kinks())
      if (k > a && k < b) cuts.push_back(k);
    cuts.push_back(b);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double half = 0.5 * (cuts[c + 1] - cuts[c]), mid = 0.5 * (cuts[c + 1] + cuts[c]);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = mid + half * rule.nodes[i];
        s += half * rule.weights[i] * g(t) / t;
      }
    }
    return s;
  };
  std::vector<double> parts;
  double total = 0.0;
  int small = 0;
  double hi = delta;
  for (int k = 0; k < 2000; ++k) {
    const double lo = 0.5 * hi;
    const double c = panel(lo, hi);
    parts.push_back(c);
    total += c;
    small = (k >= 8 && c <= 1e-18 * total) ? small + 1 : 0;
    if (small >= 2 || lo < 1e-300) break;
    hi = lo;
  }
  std::reverse(parts.begin(), parts.end());  // add small terms first
  return pairwise_sum(parts);
}

}  // namespace

double karamata_quotient(const OrliczFunction& g, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("karamata_quotient: delta must lie in (0,1)");
  const double gd = g(delta);
  if (!(gd > 0.0)) throw DomainError("karamata_quotient: G(delta) must be positive");
  const double hi = karamata_integral(g, delta, 24);
  const double lo = karamata_integral(g, delta, 16);
  const double err = std::abs(hi - lo) / std::abs(hi);
  if (!(err < 1e-10)) throw AccuracyError("karamata_quotient did not converge", err);
  return hi / gd;
}

double karamata_index(const OrliczFunction& g, const std::vector<double>& deltas) {
  std::vector<std::pair<double, double>> series;
  for (double d : deltas) series.emplace_back(d, 1.0 / karamata_quotient(g, d));
  const ConvergenceReport rep = limit_extrapolate(series);
  if (!rep.fitted_limit || !(*rep.fitted_limit > 1.0))
    throw InvalidFunctionError("Karamata quotient does not settle to an index above 1");
  return *rep.fitted_limit;
}

}  // namespace nonlocal

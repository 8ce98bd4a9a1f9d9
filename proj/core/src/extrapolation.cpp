#include "nonlocal/extrapolation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "nonlocal/errors.hpp"

namespace nonlocal {

const char* to_string(RateModel m) { return m == RateModel::PowerRate ? "PowerRate" : "LogRate"; }

namespace {

struct Linear {
  double limit, coefficient, residual;
};

// Least squares for v = L + c * phi.
Linear fit_linear(std::span<const std::pair<double, double>> w, const std::function<double(double)>& phi) {
  const double n = static_cast<double>(w.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [d, v] : w) {
    const double x = phi(d);
    sx += x;
    sy += v;
    sxx += x * x;
    sxy += x * v;
  }
  const double det = n * sxx - sx * sx;
  Linear out{sy / n, 0.0, 0.0};
  if (std::abs(det) > 1e-300 * std::max(1.0, sxx)) {
    out.coefficient = (n * sxy - sx * sy) / det;
    out.limit = (sy - out.coefficient * sx) / n;
  }
  for (const auto& [d, v] : w) {
    const double r = v - out.limit - out.coefficient * phi(d);
    out.residual += r * r;
  }
  return out;
}

// Scan then Brent-refine a one-parameter family of linear fits.
template <class Make>
std::pair<double, Linear> scan_refine(std::span<const std::pair<double, double>> w,
                                      const std::vector<double>& grid, Make make) {
  auto eval = [&](double r) { return fit_linear(w, make(r)); };
  std::size_t best = 0;
  double best_res = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double res = eval(grid[i]).residual;
    if (res < best_res) {
      best_res = res;
      best = i;
    }
  }
  const double lo = grid[best == 0 ? 0 : best - 1];
  const double hi = grid[std::min(best + 1, grid.size() - 1)];
  double r = grid[best];
  if (hi > lo) {
    const auto m = boost::math::tools::brent_find_minima(
        [&](double x) { return eval(x).residual; }, lo, hi, 52);
    if (m.second <= best_res) r = m.first;
  }
  return {r, eval(r)};
}

void check_window(std::span<const std::pair<double, double>> w) {
  if (w.size() < 3) throw DomainError("rate fit needs at least 3 points");
  for (const auto& [d, v] : w)
    if (!(d > 0.0) || !std::isfinite(v)) throw DomainError("rate fit: invalid series point");
}

}  // namespace

RateFit fit_power_rate(std::span<const std::pair<double, double>> w) {
  check_window(w);
  std::vector<double> grid;
  for (int i = 0; i <= 400; ++i) grid.push_back(0.02 * std::pow(300.0, i / 400.0));
  auto [alpha, lin] = scan_refine(w, grid, [](double a) {
    return std::function<double(double)>([a](double d) { return std::pow(d, a); });
  });
  return {RateModel::PowerRate, lin.limit, lin.coefficient, alpha, lin.residual};
}

RateFit fit_log_rate(std::span<const std::pair<double, double>> w) {
  check_window(w);
  double lmin = std::numeric_limits<double>::infinity();
  for (const auto& p : w) lmin = std::min(lmin, std::log(1.0 / p.first));
  // The shift keeps b + ln(1/delta) positive across the window.
  const double floor = lmin > 0.0 ? -0.95 * lmin : -lmin + 1e-3;
  std::vector<double> grid;
  for (int i = 0; i <= 400; ++i) grid.push_back(floor + 1e-3 * std::pow(1e6, i / 400.0));
  auto [b, lin] = scan_refine(w, grid, [](double shift) {
    return std::function<double(double)>(
        [shift](double d) { return 1.0 / (shift + std::log(1.0 / d)); });
  });
  return {RateModel::LogRate, lin.limit, lin.coefficient, b, lin.residual};
}

bool tail_diverges(std::span<const double> v, double threshold, int steps) {
  if (v.size() < static_cast<std::size_t>(steps) + 1) return false;
  for (std::size_t k = v.size() - steps; k < v.size(); ++k) {
    if (!(v[k - 1] > 0.0)) return false;
    if (!(v[k] / v[k - 1] >= threshold)) return false;
  }
  return true;
}

ConvergenceReport limit_extrapolate(std::span<const std::pair<double, double>> series) {
  if (series.size() < kFitWindow) throw DomainError("limit_extrapolate needs at least 4 points");
  for (std::size_t i = 1; i < series.size(); ++i)
    if (!(series[i].first < series[i - 1].first))
      throw DomainError("limit_extrapolate: delta must be strictly decreasing");

  ConvergenceReport rep;
  std::vector<double> values;
  for (const auto& [d, v] : series) {
    rep.series.push_back({d, v, v});
    values.push_back(v);
  }
  const auto window = series.last(kFitWindow);
  rep.tail_min = std::numeric_limits<double>::infinity();
  rep.tail_max = -std::numeric_limits<double>::infinity();
  for (const auto& p : window) {
    rep.tail_min = std::min(rep.tail_min, p.second);
    rep.tail_max = std::max(rep.tail_max, p.second);
  }

  rep.diverging = tail_diverges(values);
  if (rep.diverging || !std::isfinite(rep.tail_max)) {
    rep.diverging = true;
    return rep;
  }

  const double scale = std::max(std::abs(rep.tail_max), std::abs(rep.tail_min));
  if (rep.tail_max - rep.tail_min <= 1e-13 * scale) {
    rep.fitted_limit = window.back().second;
    rep.rate_model = RateModel::PowerRate;
    rep.fitted_rate = std::numeric_limits<double>::infinity();
    return rep;
  }

  const RateFit pw = fit_power_rate(window);
  const RateFit lg = fit_log_rate(window);
  rep.power_residual = pw.residual;
  rep.log_residual = lg.residual;
  const double tie = 1e-26 * scale * scale;
  const RateFit& best = (lg.residual + tie < pw.residual) ? lg : pw;
  rep.rate_model = best.model;
  rep.fitted_limit = best.limit;
  rep.fitted_rate = best.rate;
  rep.fitted_coefficient = best.coefficient;
  return rep;
}

}  // namespace nonlocal

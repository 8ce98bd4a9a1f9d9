#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nonlocal {

enum class RateModel { PowerRate, LogRate };

const char* to_string(RateModel m);

/// v(delta) ~ limit + coefficient * basis(delta). For PowerRate the basis is
/// delta^rate; for LogRate it is 1/(rate + ln(1/delta)).
struct RateFit {
  RateModel model;
  double limit;
  double coefficient;
  double rate;
  double residual;  // sum of squared residuals on the fitted window
};

struct SeriesPoint {
  double delta;
  double raw;
  double scaled;
};

struct ConvergenceReport {
  std::vector<SeriesPoint> series;
  std::optional<double> fitted_limit;  // absent when diverging
  double fitted_rate = 0.0;
  double fitted_coefficient = 0.0;
  RateModel rate_model = RateModel::PowerRate;
  double power_residual = 0.0;
  double log_residual = 0.0;
  bool diverging = false;

  // Filled by the callers that know what the limit should be.
  double target = 0.0;             // +inf when the local energy is infinite
  double target_normalized = 0.0;  // same target with the sphere-averaged constant
  double relative_error = 0.0;     // against `target`
  std::string matched_convention;  // "raw", "normalized" or "neither"
  double tail_min = 0.0;
  double tail_max = 0.0;
  std::vector<std::string> warnings;
};

/// Points used by the model fits (taken from the end of the series).
inline constexpr std::size_t kFitWindow = 4;

RateFit fit_power_rate(std::span<const std::pair<double, double>> window);
RateFit fit_log_rate(std::span<const std::pair<double, double>> window);

/// Fits both rate models on the tail and picks the smaller residual; PowerRate
/// wins ties. Diverging when the last three step ratios are all >= 1.2.
/// Input: (delta, value) with delta strictly decreasing, at least 4 points.
ConvergenceReport limit_extrapolate(std::span<const std::pair<double, double>> series);

/// True when the three final ratios v[k+1]/v[k] are all >= threshold.
bool tail_diverges(std::span<const double> values, double threshold = 1.2, int steps = 3);

}  // namespace nonlocal

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nonlocal/sampled_table.hpp"

namespace nonlocal {

enum class OrliczKind { Power, PowerLog, MaxPower, Custom };

const char* to_string(OrliczKind k);

/// A Young function G with G(0) = 0, regularly varying at 0.
///
/// Power(p)          t^p
/// PowerLog(p, q)    t^p (1 + |ln t|)^q
/// MaxPower(lo, hi)  max(t^lo, t^hi), lo < hi; index lo
/// Custom            sampled table (monotone cubic in log-log) or callable
///
/// Values are immutable; copies share any custom data.
class OrliczFunction {
 public:
  static OrliczFunction power(double p);
  static OrliczFunction power_log(double p, double q = 1.0);
  static OrliczFunction max_power(double low, double high);
  /// Index is detected from the Karamata quotient of the interpolant.
  static OrliczFunction from_table(const SampledTable& table, std::string name = "custom");
  /// `slope` may be empty; a central difference is used then.
  static OrliczFunction from_callable(std::function<double(double)> value,
                                      std::function<double(double)> slope,
                                      std::string name = "custom");

  OrliczKind kind() const { return kind_; }
  /// Regular-variation index at 0 (the p of the localization scaling).
  double index() const { return p_; }
  /// Second parameter: q of PowerLog, the high exponent of MaxPower, 0 otherwise.
  double secondary() const { return q_; }

  double operator()(double t) const;
  /// Right derivative; at kinks this is the limit from above.
  double derivative(double t) const;
  /// Slowly varying part G(t)/t^p.
  double ell(double t) const;
  double ell_lower_bound() const { return ell_min_; }
  /// Points where G' jumps.
  const std::vector<double>& kinks() const { return kinks_; }
  const std::string& name() const { return name_; }

 private:
  struct Custom;
  OrliczFunction() = default;

  OrliczKind kind_ = OrliczKind::Power;
  double p_ = 2.0;
  double q_ = 0.0;
  double ell_min_ = 1.0;
  std::vector<double> kinks_;
  std::string name_;
  std::shared_ptr<const Custom> custom_;
};

/// (G(t), G'(t)) with G'(0) = 0.
std::pair<double, double> eval_pair(const OrliczFunction& g, double t);

struct LogGrid {
  double lo = 1e-8;
  double hi = 1e8;
  int count = 400;
  std::vector<double> points() const;
};

struct GrowthReport {
  double p_minus;
  double p_plus;
  std::vector<double> sample_grid;
  std::vector<double> quotient_samples;  // t G'(t) / G(t)
};

/// Observed inf/sup of t G'(t)/G(t), widened by `tol`.
GrowthReport growth_exponents(const OrliczFunction& g, const LogGrid& grid = {}, double tol = 1e-9);

/// Empirical check of the Orlicz axioms on a log grid.
struct AxiomReport {
  double doubling_constant;     // sup G(2t)/G(t), the Delta_2 constant
  double lower_doubling;        // inf G(2t)/G(t)
  double nabla2_constant;       // 2^{p_minus}
  bool nabla2_holds;
  bool increasing;
  bool convex;
  double worst_second_difference;  // most negative normalized second difference
  std::vector<std::pair<double, double>> nonconvex_intervals;
  bool superlinear_at_zero;
  double ell_min;
};

AxiomReport check_axioms(const OrliczFunction& g, const LogGrid& grid = {});

/// sup_{t>0} (a t - G(t)).
double conjugate(const OrliczFunction& g, double a);

struct IndexReport {
  double index;
  std::vector<double> t_schedule;
  std::vector<double> slopes;      // least-squares slope of log(G(lt)/G(t)) vs log l, per t
  double uniform_deviation;        // max_l |G(lt)/G(t) - l^p| / l^p at the smallest t
  double window_spread;            // disagreement between extrapolation windows
};

/// Regular-variation index from rescaling ratios, extrapolated in 1/ln(1/t).
/// Throws NonRegularVariation when the extrapolated estimate is unstable.
IndexReport rv_index_at_zero(const OrliczFunction& g, const std::vector<double>& lambdas,
                             const std::vector<double>& t_schedule, double tol = 0.01);

/// Default grids: 21 log-spaced lambdas in [0.1, 10]; t = 10^-2 .. 10^-12.
IndexReport rv_index_at_zero(const OrliczFunction& g);

/// G(delta)^-1 int_0^delta G(t)/t dt. Tends to 1/p as delta -> 0.
double karamata_quotient(const OrliczFunction& g, double delta);

/// 1/p estimated from the Karamata quotient along a delta schedule and
/// extrapolated; needs only point evaluations of G.
double karamata_index(const OrliczFunction& g, const std::vector<double>& deltas);

}  // namespace nonlocal

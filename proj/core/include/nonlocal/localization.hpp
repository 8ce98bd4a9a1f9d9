#pragma once

#include <string>
#include <vector>

#include "nonlocal/extrapolation.hpp"
#include "nonlocal/nonlocal_quadrature.hpp"
#include "nonlocal/orlicz.hpp"
#include "nonlocal/test_functions.hpp"

namespace nonlocal {

/// delta_k = delta0 * ratio^k, k = 0..count-1.
struct DeltaSchedule {
  double delta0 = 0.4;
  double ratio = 0.6;
  int count = 10;

  std::vector<double> deltas() const;
  void validate(double s) const;
};

/// p(1-s) / G(delta^(1-s)) * Psi_{s,G,delta}(u), p = index of G.
double scaled_psi(const TestFunction& u, const OrliczFunction& g, double s, double delta,
                  const CubatureSpec& spec = {});

/// The scaling prefactor alone; throws ScheduleTooDeep if G(delta^(1-s)) underflows.
double localization_prefactor(const OrliczFunction& g, double s, double delta);

/// Runs the schedule, extrapolates, and compares with
/// K_raw(N,p) * int |grad u|^p (and the normalized-constant alternative).
/// `match_tol` decides which convention, if any, the limit matches.
ConvergenceReport verify_main_theorem(const TestFunction& u, const OrliczFunction& g, double s,
                                      const DeltaSchedule& schedule, const CubatureSpec& spec = {},
                                      double match_tol = 0.01);

/// Same for the general kernel J, scaled by (N+p+q) / (G(delta) J(delta) delta^N).
ConvergenceReport verify_correa(const TestFunction& u, const OrliczFunction& g, const Kernel& j,
                                const DeltaSchedule& schedule, const CubatureSpec& spec = {},
                                double match_tol = 0.02);

enum class InequalityCheck {
  GradientBound,       // Psi <= sigma_N/(1-s) Phi_G(|grad u| delta^(1-s))
  MollifierMonotone,   // Psi(u_r) <= Psi(u)
  Truncation,          // Psi(u_k) <= c/2 Psi(u) + sigma_N c^2/(2k(1-s)) Phi_G(u delta^(1-s))
  Equicontinuity,      // Phi_G(u(.+h)-u) <= 2^(N+s+1) c / nu_N |h|^s Psi
  HorizonComparison    // Psi_d1/G(d1^(1-s)) <= Psi_d2/G(d2^(1-s)) + ... for d2 < d1
};

const char* to_string(InequalityCheck c);
InequalityCheck parse_inequality_check(const std::string& s);

struct InequalityParams {
  double s = 0.5;
  double delta = 0.1;
  double delta_small = 0.05;  // d2 of the horizon comparison, d1 = delta
  int k = 1;
  double r = 0.05;
  double h = 0.01;
};

struct InequalityResult {
  InequalityCheck check;
  double lhs;
  double rhs;     // includes the quadrature slack factor
  double margin;  // (rhs - lhs) / rhs
  bool pass;
  std::string detail;
};

/// Quadrature slack applied to the larger side of every inequality.
inline constexpr double kInequalitySlack = 1.0 + 1e-4;

InequalityResult inequality_suite(InequalityCheck check, const TestFunction& u,
                                  const OrliczFunction& g, const InequalityParams& params,
                                  const CubatureSpec& spec = {});

/// All five checks; equicontinuity at h = params.h and h = delta/2.
std::vector<InequalityResult> run_inequality_suite(const TestFunction& u, const OrliczFunction& g,
                                                   const InequalityParams& params,
                                                   const CubatureSpec& spec = {});

}  // namespace nonlocal

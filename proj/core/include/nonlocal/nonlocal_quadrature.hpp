#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "nonlocal/geometry.hpp"
#include "nonlocal/orlicz.hpp"
#include "nonlocal/sphere.hpp"
#include "nonlocal/test_functions.hpp"

namespace nonlocal {

/// Discretization of every singular integral in the library.
///
/// The radial integral over (0, delta) is mapped to t = (r/delta)^gamma, with
/// gamma chosen so the integrand behaves like t^(p-1) at 0, and split into
/// geometric panels [2^-(k+1), 2^-k], each integrated with Gauss-Legendre.
/// Panels are added until two consecutive ones contribute below
/// tail_tol * total (and at least radial_panels are used).
struct CubatureSpec {
  int radial_panels = 8;
  int max_radial_panels = 200;
  int nodes_per_panel = 16;
  SphereSpec sphere{12, 10, 24};
  int outer_order = 16;
  double outer_panel = 0.25;
  int outer_grading = 12;  // geometric levels toward kinks of u (1D and radial)
  double r_floor = 1e-300;  // smallest t reached by the panels
  double tail_tol = 1e-14;
  bool error_estimate = true;
  // Fold the azimuth analytically when the inner integrand is symmetric about
  // the pole (radial fields, exact linear profiles).
  bool use_symmetry = true;

  void validate() const;
};

struct LocalValue {
  double value = 0.0;
  bool converged = true;
  int panels = 0;
};

/// int_{B(x,delta)} G(|u(x)-u(y)|/|x-y|^s) |x-y|^-N dy in polar form.
/// Requires s in [0.1, 0.9] and 0 < delta <= 1.
LocalValue psi_local(const TestFunction& u, const Point& x, double s, const OrliczFunction& g,
                     double delta, const CubatureSpec& spec = {});

struct ProfileSample {
  Point x;
  double value;
  double weight;
};

struct EnergyBreakdown {
  double total = 0.0;
  std::vector<ProfileSample> inner_profile;
  double quadrature_error_estimate = 0.0;
  std::size_t node_count = 0;
  std::size_t unconverged_nodes = 0;
  std::vector<std::string> warnings;
};

/// Psi_{s,G,delta}(u): outer cubature of psi_local. Radial fields reduce to a
/// radial outer integral; outer panels split where the horizon ball touches a
/// kink of u. The sum is pairwise in node order, independent of threads.
EnergyBreakdown psi_total(const TestFunction& u, double s, const OrliczFunction& g, double delta,
                          const CubatureSpec& spec = {});

void write_profile_csv(std::ostream& out, const EnergyBreakdown& e, int dim);
/// One line: {"total": ..., "error_estimate": ..., "node_count": ...}
std::string summary_record(const EnergyBreakdown& e);

/// Phi_G(c u) = int G(c |u|).
double phi_g_norm(const TestFunction& u, const OrliczFunction& g, double c = 1.0);
/// Phi_G(c |grad u|) = int G(c |grad u|).
double phi_g_gradient(const TestFunction& u, const OrliczFunction& g, double c = 1.0);

/// Interaction kernel J, regularly varying at 0 with index q.
struct Kernel {
  std::function<double(double)> J;
  double q;
  std::string name;
};

/// J(r) = r^-exponent.
Kernel power_kernel(double exponent);
/// J = 1.
Kernel constant_kernel();

/// int int_{B(x,delta)} G(|u(x)-u(y)|) J(|x-y|) dy dx. Needs N + p + q > 0.
double psi_kernel_total(const TestFunction& u, const OrliczFunction& g, const Kernel& j,
                        double delta, const CubatureSpec& spec = {});

/// phi(a, s, delta) = int_{B(0,delta)} G(a |e.h| / |h|^s) |h|^-N dh, with the
/// sphere rule aligned to e.
double phi_numeric(double a, double s, double delta, const OrliczFunction& g, int dim,
                   const CubatureSpec& spec = {}, const Point& e = {1.0, 0.0, 0.0});

enum class KConvention { Raw, Normalized };

/// Raw: int_{S^{N-1}} |w.e|^p dS. Normalized: raw / |S^{N-1}|.
/// The quadrature value is checked against the Gamma-function formula.
double k_constant(int dim, double p, KConvention conv);

/// int_{S^{N-1}} |w.e|^p |ln|w.e|| dS.
double k_ln_constant(int dim, double p);

struct KConstantReport {
  int dim;
  double p;
  double raw;
  double normalized;
  double gamma_normalized;
  double monte_carlo_normalized;
  std::size_t samples;
};

/// Quadrature, Gamma formula and seeded Monte Carlo side by side. Throws
/// ConsistencyError when Monte Carlo misses the quadrature by more than 1e-3.
KConstantReport k_constant_report(int dim, double p, std::uint64_t seed = 0x5EED,
                                  std::size_t samples = 1000000);

}  // namespace nonlocal

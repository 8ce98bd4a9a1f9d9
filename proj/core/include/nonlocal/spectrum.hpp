#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nonlocal/extrapolation.hpp"
#include "nonlocal/localization.hpp"
#include "nonlocal/orlicz.hpp"

namespace nonlocal {

/// Uniform grid on (0,1): x_i = i h, i = 1..M, h = 1/(M+1). The horizon spans
/// exactly `neighbors` spacings; nodes within it outside (0,1) carry u = 0.
struct Grid1D {
  int M = 0;
  double h = 0.0;
  int neighbors = 0;
  double delta = 0.0;

  /// Checks M >= 32 and h < delta/4.
  Grid1D(int interior_nodes, int neighbors);

  /// M + 1 = round(neighbors / delta), so the horizon is neighbors * h exactly.
  static Grid1D snapped(double delta, int neighbors);
};

/// sum over ordered pairs i != j with |i-j| <= m of G(|u_i-u_j|/(|i-j|h)^s) h^2/(|i-j|h).
double discrete_energy(std::span<const double> u, const Grid1D& grid, const OrliczFunction& g, double s);
void discrete_energy_gradient(std::span<const double> u, const Grid1D& grid, const OrliczFunction& g,
                              double s, std::span<double> grad);

/// Phi_h(u) = h sum G(|u_i|).
double discrete_modular(std::span<const double> u, const Grid1D& grid, const OrliczFunction& g);
void discrete_modular_gradient(std::span<const double> u, const Grid1D& grid, const OrliczFunction& g,
                               std::span<double> grad);

/// A with discrete_energy = u^T A u for G = t^2.
Eigen::MatrixXd quadratic_energy_matrix(const Grid1D& grid, double s);

/// min over u of u^T A u / (h |u|^2), from a dense symmetric eigensolver.
double dense_rayleigh_minimum(const Grid1D& grid, double s);

struct EigenResult {
  double lambda1 = 0.0;
  std::vector<double> eigenvector;
  double mu = 0.0;
  int iterations = 0;
  double residual = 0.0;
  double scaled_lambda1 = 0.0;
  double delta = 0.0;
  double h = 0.0;
};

struct SolverOptions {
  int max_iters = 50000;
  double residual_tol = 1e-8;
  double stagnation_tol = 1e-10;
  int stagnation_window = 20;
  double perturbation = 1e-3;
};

/// Minimizes Psi_h over {Phi_h(u) = mu}: Riemannian gradient steps with
/// Barzilai-Borwein lengths, nonmonotone Armijo backtracking, and a scalar
/// root-find retraction c -> Phi_h(c u) = mu. lambda1 = Psi_h / Phi_h at the
/// minimizer. Throws SolverError (with the best iterate) past max_iters.
EigenResult rayleigh_minimize(const Grid1D& grid, const OrliczFunction& g, double s, double mu,
                              std::uint64_t seed, const SolverOptions& opts = {});

/// First Dirichlet eigenvalue of -u'' on (0,1) from dense finite-difference
/// eigensolves on three meshes, Richardson-extrapolated.
double local_dirichlet_eigenvalue();

struct SpectralStudy {
  ConvergenceReport report;
  std::vector<EigenResult> solves;
  std::vector<double> oracle_lambda;      // dense eigensolver, Power(2) only
  double mesh_halving_change = 0.0;       // relative change at the smallest delta
  double local_eigenvalue = 0.0;          // 0 when no local oracle exists for this G
};

struct SpectralOptions {
  int neighbors = 8;
  double mu = 1.0;
  std::uint64_t seed = 0x5EED;
  double match_tol = 0.05;
  bool mesh_check = true;
  SolverOptions solver{};
};

/// Runs rayleigh_minimize along the schedule, scales by p(1-s)/G(delta^(1-s)),
/// and extrapolates. Target K_raw(1,2) * pi^2 is set for G = t^2 only.
SpectralStudy spectral_scaling_study(const OrliczFunction& g, double s, const DeltaSchedule& schedule,
                                     const SpectralOptions& opts = {});

}  // namespace nonlocal

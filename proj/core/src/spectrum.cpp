#include "nonlocal/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <random>

#include <boost/math/tools/roots.hpp>

#include "nonlocal/errors.hpp"
#include "nonlocal/gauss_legendre.hpp"
#include "nonlocal/nonlocal_quadrature.hpp"

namespace nonlocal {

Grid1D::Grid1D(int interior_nodes, int nb) : M(interior_nodes), h(1.0 / (interior_nodes + 1)), neighbors(nb) {
  if (M < 32) throw ResolutionError("grid needs at least 32 interior nodes");
  if (neighbors <= 4) throw ResolutionError("grid spacing must satisfy h < delta/4");
  delta = neighbors * h;
  if (!(delta <= 1.0)) throw ResolutionError("horizon must not exceed the domain length");
}

Grid1D Grid1D::snapped(double delta, int neighbors) {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  const int n = static_cast<int>(std::lround(neighbors / delta));
  return Grid1D(n - 1, neighbors);
}

namespace {

// Visits every unordered pair (i, i+k) of the extended grid with at least one
// interior node; f(i, j, k) receives interior-or-collar indices (collar < 1 or > M).
template <class F>
void for_each_pair(const Grid1D& grid, F&& f) {
  const int m = grid.neighbors, M = grid.M;
  for (int i = 1 - m; i <= M; ++i)
    for (int k = 1; k <= m; ++k) {
      const int j = i + k;
      if (j < 1) continue;
      if (i < 1 && j > M) continue;
      f(i, j, k);
    }
}

inline double at(std::span<const double> u, int i, int M) { return (i >= 1 && i <= M) ? u[i - 1] : 0.0; }

void check_size(std::span<const double> u, const Grid1D& grid) {
  if (u.size() != static_cast<std::size_t>(grid.M)) throw DomainError("vector length must equal M");
}

}  // namespace

double discrete_energy(std::span<const double> u, const Grid1D& grid, const OrliczFunction& g, double s) {
  check_size(u, grid);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(grid.M + grid.neighbors) * grid.neighbors);
  for_each_pair(grid, [&](int i, int j, int k) {
    const double d = std::pow(k * grid.h, s);
    // Ordered pairs (i,j) and (j,i) contribute equally.
    terms.push_back(2.0 * g(std::abs(at(u, i, grid.M) - at(u, j, grid.M)) / d) * grid.h / k);
  });
  return pairwise_sum(terms);
}

void discrete_energy_gradient(std::span<const double> u, const Grid1D& grid, const OrliczFunction& g,
                              double s, std::span<double> grad) {
  check_size(u, grid);
  std::fill(grad.begin(), grad.end(), 0.0);
  for_each_pair(grid, [&](int i, int j, int k) {
    const double d = std::pow(k * grid.h, s);
    const double diff = at(u, i, grid.M) - at(u, j, grid.M);
    if (diff == 0.0) return;
    const double v = 2.0 * grid.h / k * g.derivative(std::abs(diff) / d) / d * (diff > 0 ? 1.0 : -1.0);
    if (i >= 1) grad[i - 1] += v;
    if (j <= grid.M) grad[j - 1] -= v;
  });
}

double discrete_modular(std::span<const double> u, const Grid1D& grid, const OrliczFunction& g) {
  check_size(u, grid);
  std::vector<double> terms(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) terms[i] = g(std::abs(u[i]));
  return grid.h * pairwise_sum(terms);
}

void discrete_modular_gradient(std::span<const double> u, const Grid1D& grid, const OrliczFunction& g,
                               std::span<double> grad) {
  check_size(u, grid);
  for (std::size_t i = 0; i < u.size(); ++i)
    grad[i] = grid.h * g.derivative(std::abs(u[i])) * (u[i] >= 0 ? 1.0 : -1.0);
}

Eigen::MatrixXd quadratic_energy_matrix(const Grid1D& grid, double s) {
  const int M = grid.M;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(M, M);
  for_each_pair(grid, [&](int i, int j, int k) {
    const double w = 2.0 * grid.h / k / std::pow(k * grid.h, 2.0 * s);
    const bool ii = i >= 1, jj = j <= M;
    if (ii) A(i - 1, i - 1) += w;
    if (jj) A(j - 1, j - 1) += w;
    if (ii && jj) {
      A(i - 1, j - 1) -= w;
      A(j - 1, i - 1) -= w;
    }
  });
  return A;
}

double dense_rayleigh_minimum(const Grid1D& grid, double s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(quadratic_energy_matrix(grid, s), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0) / grid.h;
}

namespace {

double dotv(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// c > 0 with Phi_h(c v) = mu; Phi_h(c v) is increasing in c.
double retraction_scale(const std::vector<double>& v, const Grid1D& grid, const OrliczFunction& g, double mu) {
  std::vector<double> w(v.size());
  auto phi = [&](double c) {
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = c * v[i];
    return discrete_modular(w, grid, g) - mu;
  };
  const double base = phi(1.0) + mu;
  if (!(base > 0.0)) throw SolverError("iterate collapsed to zero", v, 0.0);
  double c0 = std::pow(mu / base, 1.0 / g.index());
  const double f0 = phi(c0);
  if (std::abs(f0) <= 1e-15 * mu) return c0;
  double lo = c0, hi = c0;
  if (f0 > 0.0) {
    while (phi(lo) > 0.0) lo *= 0.5;
  } else {
    while (phi(hi) < 0.0) hi *= 2.0;
  }
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(phi, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace

EigenResult rayleigh_minimize(const Grid1D& grid, const OrliczFunction& g, double s, double mu,
                              std::uint64_t seed, const SolverOptions& opts) {
  if (!(mu > 0.0)) throw DomainError("rayleigh_minimize: mu must be positive");
  const int M = grid.M;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> u(M);
  for (int i = 0; i < M; ++i) u[i] = std::sin(std::numbers::pi * (i + 1) * grid.h) + opts.perturbation * unif(rng);

  auto retract = [&](std::vector<double>& v) {
    const double c = retraction_scale(v, grid, g, mu);
    for (double& x : v) x *= c;
  };
  retract(u);

  std::vector<double> gpsi(M), gphi(M), proj(M), prev_u, prev_proj, trial(M);
  auto energy = [&](const std::vector<double>& v) { return discrete_energy(v, grid, g, s); };
  auto projected = [&](const std::vector<double>& v) {
    discrete_energy_gradient(v, grid, g, s, gpsi);
    discrete_modular_gradient(v, grid, g, gphi);
    const double a = dotv(gpsi, gphi) / dotv(gphi, gphi);
    for (int i = 0; i < M; ++i) proj[i] = gpsi[i] - a * gphi[i];
    return std::sqrt(dotv(proj, proj)) / std::sqrt(dotv(gpsi, gpsi));
  };

  double psi = energy(u);
  std::deque<double> recent{psi};
  std::vector<double> best_hist{psi};
  double best = psi;
  std::vector<double> best_u = u;
  double tau = 0.0;
  EigenResult out;
  int it = 0;
  double res = projected(u);
  for (; it < opts.max_iters; ++it) {
    if (res < opts.residual_tol) break;
    if (it >= opts.stagnation_window) {
      const double old = best_hist[best_hist.size() - 1 - opts.stagnation_window];
      if (old - best <= opts.stagnation_tol * std::abs(old)) break;
    }
    const double pn2 = dotv(proj, proj);
    if (it == 0) {
      tau = 1e-3 * std::sqrt(dotv(u, u) / pn2);
    } else {
      double ss = 0.0, sy = 0.0, yy = 0.0;
      for (int i = 0; i < M; ++i) {
        const double sk = u[i] - prev_u[i], yk = proj[i] - prev_proj[i];
        ss += sk * sk;
        sy += sk * yk;
        yy += yk * yk;
      }
      if (sy > 0.0) tau = (it % 2 == 1) ? ss / sy : sy / yy;
      else tau *= 2.0;
    }
    tau = std::clamp(tau, 1e-30, 1e30);
    const double ref = *std::max_element(recent.begin(), recent.end());
    bool accepted = false;
    double trial_psi = psi;
    for (int bt = 0; bt < 60; ++bt) {
      for (int i = 0; i < M; ++i) trial[i] = u[i] - tau * proj[i];
      retract(trial);
      trial_psi = energy(trial);
      if (trial_psi <= ref - 1e-4 * tau * pn2) {
        accepted = true;
        break;
      }
      tau *= 0.5;
    }
    if (!accepted) break;
    prev_u = u;
    prev_proj = proj;
    u = trial;
    psi = trial_psi;
    recent.push_back(psi);
    if (recent.size() > 10) recent.pop_front();
    if (psi < best) {
      best = psi;
      best_u = u;
    }
    best_hist.push_back(best);
    res = projected(u);
  }
  if (it >= opts.max_iters) throw SolverError("rayleigh_minimize did not converge", best_u, best / mu);
  if (psi > best) {
    u = best_u;
    psi = best;
    res = projected(u);
  }
  double sum = 0.0;
  for (double x : u) sum += x;
  if (sum < 0.0)
    for (double& x : u) x = -x;
  out.lambda1 = psi / discrete_modular(u, grid, g);
  out.eigenvector = u;
  out.mu = mu;
  out.iterations = it;
  out.residual = res;
  out.delta = grid.delta;
  out.h = grid.h;
  out.scaled_lambda1 = localization_prefactor(g, s, grid.delta) * out.lambda1;
  return out;
}

double local_dirichlet_eigenvalue() {
  static const double value = [] {
    auto fd = [](int n) {
      const double h = 1.0 / (n + 1);
      Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        T(i, i) = 2.0 / (h * h);
        if (i + 1 < n) T(i, i + 1) = T(i + 1, i) = -1.0 / (h * h);
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
      return es.eigenvalues()(0);
    };
    const double l1 = fd(63), l2 = fd(127), l3 = fd(255);
    const double r1 = (4.0 * l2 - l1) / 3.0, r2 = (4.0 * l3 - l2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
  }();
  return value;
}

SpectralStudy spectral_scaling_study(const OrliczFunction& g, double s, const DeltaSchedule& schedule,
                                     const SpectralOptions& opts) {
  schedule.validate(s);
  SpectralStudy st;
  const bool quadratic = g.kind() == OrliczKind::Power && g.index() == 2.0;
  std::vector<std::pair<double, double>> pts;
  std::vector<SeriesPoint> series;
  std::uint64_t seed = opts.seed;
  for (double d : schedule.deltas()) {
    const Grid1D grid = Grid1D::snapped(d, opts.neighbors);
    EigenResult r = rayleigh_minimize(grid, g, s, opts.mu, seed++, opts.solver);
    if (quadratic) st.oracle_lambda.push_back(dense_rayleigh_minimum(grid, s));
    pts.emplace_back(grid.delta, r.scaled_lambda1);
    series.push_back({grid.delta, r.lambda1, r.scaled_lambda1});
    st.solves.push_back(std::move(r));
  }
  st.report = limit_extrapolate(pts);
  st.report.series = series;
  if (opts.mesh_check) {
    const Grid1D coarse = Grid1D::snapped(schedule.deltas().back(), opts.neighbors);
    const Grid1D fine(2 * (coarse.M + 1) - 1, 2 * opts.neighbors);
    const EigenResult rf = rayleigh_minimize(fine, g, s, opts.mu, seed, opts.solver);
    st.mesh_halving_change = std::abs(rf.lambda1 - st.solves.back().lambda1) / st.solves.back().lambda1;
  }
  if (quadratic) {
    st.local_eigenvalue = local_dirichlet_eigenvalue();
    const double raw = k_constant(1, 2.0, KConvention::Raw);
    st.report.target = raw * st.local_eigenvalue;
    st.report.target_normalized = raw / 2.0 * st.local_eigenvalue;
    if (st.report.fitted_limit) {
      const double L = *st.report.fitted_limit;
      st.report.relative_error = std::abs(L - st.report.target) / st.report.target;
      const double en = std::abs(L - st.report.target_normalized) / st.report.target_normalized;
      const bool a = st.report.relative_error <= opts.match_tol, b = en <= opts.match_tol;
      st.report.matched_convention = a ? (b ? "both" : "raw") : (b ? "normalized" : "neither");
    }
  } else {
    st.report.target = std::numeric_limits<double>::quiet_NaN();
    st.report.target_normalized = std::numeric_limits<double>::quiet_NaN();
    st.report.relative_error = std::numeric_limits<double>::quiet_NaN();
    st.report.matched_convention = "none";
  }
  return st;
}

}  // namespace nonlocal

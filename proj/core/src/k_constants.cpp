#include <cmath>
#include <numbers>
#include <random>

#include "nonlocal/errors.hpp"
#include "nonlocal/nonlocal_quadrature.hpp"
#include "nonlocal/special_functions.hpp"

namespace nonlocal {

namespace {

const SphereSpec kConstantRule{24, 24, 4};

double raw_by_quadrature(int dim, double p) {
  return zonal_integral(dim, [p](double z) { return std::pow(z, p); }, {}, kConstantRule);
}

}  // namespace

double k_constant(int dim, double p, KConvention conv) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("k_constant: p must be > 0");
  const double area = sphere_constants(dim).surface_area;
  const double raw = raw_by_quadrature(dim, p);
  const double gamma = area * normalized_sphere_moment(dim, p);
  if (std::abs(raw - gamma) > 1e-10 * gamma)
    throw ConsistencyError("k_constant: sphere quadrature and Gamma formula disagree");
  return conv == KConvention::Raw ? raw : raw / area;
}

double k_ln_constant(int dim, double p) {
  if (!(p > 0.0)) throw DomainError("k_ln_constant: p must be > 0");
  if (dim == 1) return 0.0;
  if (dim == 3) return 4.0 * std::numbers::pi / ((p + 1.0) * (p + 1.0));
  return zonal_integral(
      dim, [p](double z) { return z > 0.0 ? -std::pow(z, p) * std::log(z) : 0.0; }, {}, kConstantRule);
}

KConstantReport k_constant_report(int dim, double p, std::uint64_t seed, std::size_t samples) {
  KConstantReport rep{};
  rep.dim = dim;
  rep.p = p;
  rep.raw = k_constant(dim, p, KConvention::Raw);
  rep.normalized = rep.raw / sphere_constants(dim).surface_area;
  rep.gamma_normalized = normalized_sphere_moment(dim, p);
  rep.samples = samples;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    double v[3] = {0.0, 0.0, 0.0}, nn = 0.0;
    for (int k = 0; k < dim; ++k) {
      v[k] = normal(rng);
      nn += v[k] * v[k];
    }
    acc += std::pow(std::abs(v[0]) / std::sqrt(nn), p);
  }
  rep.monte_carlo_normalized = acc / static_cast<double>(samples);
  if (std::abs(rep.monte_carlo_normalized - rep.normalized) > 1e-3)
    throw ConsistencyError("k_constant: Monte Carlo estimate misses the quadrature by more than 1e-3");
  return rep;
}

}  // namespace nonlocal

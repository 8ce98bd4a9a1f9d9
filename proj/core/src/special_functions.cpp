#include "nonlocal/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "nonlocal/errors.hpp"

namespace nonlocal {

double log_gamma(double x) {
  static constexpr std::array<double, 9> c{
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double g = 7.0;
  if (!std::isfinite(x) || (x <= 0.0 && x == std::floor(x)))
    throw DomainError("log_gamma: pole or non-finite argument");
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    return std::log(std::numbers::pi / std::abs(std::sin(std::numbers::pi * x))) -
           log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double a = c[0];
  for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
  const double t = z + g + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double normalized_sphere_moment(int dim, double p) {
  const double n = dim;
  return std::exp(log_gamma(0.5 * n) + log_gamma(0.5 * (p + 1.0)) - log_gamma(0.5 * (n + p)) -
                  0.5 * std::log(std::numbers::pi));
}

}  // namespace nonlocal

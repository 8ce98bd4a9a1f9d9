#pragma once

// Reference values computed without the library's own quadrature.

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

inline double sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
}

// int_{S^{N-1}} |w.e|^p dS.
inline double k_raw(int n, double p) {
  return sphere_area(n) * std::tgamma(n / 2.0) * std::tgamma((p + 1.0) / 2.0) /
         (std::sqrt(std::numbers::pi) * std::tgamma((n + p) / 2.0));
}

template <class F>
double integrate(F f, double a, double b) {
  static boost::math::quadrature::tanh_sinh<double> ts(15);
  return ts.integrate(f, a, b, 1e-13);
}

// t^p (1 + |ln t|)^q
inline double power_log(double t, double p, double q) {
  return t <= 0.0 ? 0.0 : std::pow(t, p) * std::pow(1.0 + std::abs(std::log(t)), q);
}

}  // namespace oracle

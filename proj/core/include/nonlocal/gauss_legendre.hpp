#pragma once

#include <span>
#include <vector>

namespace nonlocal {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached per order; the reference stays valid for the program lifetime.
const GaussRule& gauss_legendre(int order);

struct NodeSet {
  std::vector<double> x;
  std::vector<double> w;

  void append(double a, double b, const GaussRule& rule);
  std::size_t size() const { return x.size(); }
};

/// Nodes on [a, b] split at `breaks` (those strictly inside), with geometric
/// panels of ratio 1/2 accumulating at a and/or b.
NodeSet graded_nodes(double a, double b, int order, int levels, bool grade_a, bool grade_b,
                     std::span<const double> breaks = {});

/// Composite rule on [a, b] split at `breaks` with panels no wider than `width`.
NodeSet composite_nodes(double a, double b, int order, double width,
                        std::span<const double> breaks = {});

template <class F>
double integrate(const NodeSet& ns, F&& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) s += ns.w[i] * f(ns.x[i]);
  return s;
}

/// Fixed-order Gauss-Legendre on one interval.
template <class F>
double gauss_integrate(F&& f, double a, double b, int order) {
  const GaussRule& r = gauss_legendre(order);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
  return s * half;
}

/// Pairwise sum; the reduction tree depends only on the length.
double pairwise_sum(std::span<const double> v);

}  // namespace nonlocal

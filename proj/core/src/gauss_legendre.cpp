#include "nonlocal/gauss_legendre.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace nonlocal {

namespace {

GaussRule build_rule(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1 || order > 512) throw std::invalid_argument("gauss_legendre: order out of range");
  static std::mutex mtx;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mtx);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussRule>(build_rule(order));
  return *slot;
}

void NodeSet::append(double a, double b, const GaussRule& rule) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    x.push_back(mid + half * rule.nodes[i]);
    w.push_back(half * rule.weights[i]);
  }
}

namespace {

std::vector<double> split_points(double a, double b, std::span<const double> breaks) {
  std::vector<double> pts{a};
  for (double c : breaks)
    if (c > a && c < b) pts.push_back(c);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

NodeSet graded_nodes(double a, double b, int order, int levels, bool grade_a, bool grade_b,
                     std::span<const double> breaks) {
  const GaussRule& rule = gauss_legendre(order);
  NodeSet ns;
  const auto pts = split_points(a, b, breaks);
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double lo = pts[k], hi = pts[k + 1];
    const bool ga = grade_a && k == 0;
    const bool gb = grade_b && k + 2 == pts.size();
    if (!ga && !gb) {
      ns.append(lo, hi, rule);
      continue;
    }
    // Grade toward one end, or both ends meeting at the midpoint.
    const double mid = (ga && gb) ? 0.5 * (lo + hi) : (ga ? hi : lo);
    if (ga) {
      const double len = mid - lo;
      ns.append(lo, lo + len * std::ldexp(1.0, -levels), rule);
      for (int j = levels; j >= 1; --j)
        ns.append(lo + len * std::ldexp(1.0, -j), lo + len * std::ldexp(1.0, -j + 1), rule);
    }
    if (gb) {
      const double len = hi - mid;
      for (int j = 1; j <= levels; ++j)
        ns.append(hi - len * std::ldexp(1.0, -j + 1), hi - len * std::ldexp(1.0, -j), rule);
      ns.append(hi - len * std::ldexp(1.0, -levels), hi, rule);
    }
  }
  return ns;
}

NodeSet composite_nodes(double a, double b, int order, double width,
                        std::span<const double> breaks) {
  const GaussRule& rule = gauss_legendre(order);
  NodeSet ns;
  const auto pts = split_points(a, b, breaks);
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double len = pts[k + 1] - pts[k];
    const int panels = std::max(1, static_cast<int>(std::ceil(len / width - 1e-12)));
    for (int j = 0; j < panels; ++j)
      ns.append(pts[k] + len * j / panels, pts[k] + len * (j + 1) / panels, rule);
  }
  return ns;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

}  // namespace nonlocal

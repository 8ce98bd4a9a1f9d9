#pragma once

#include <array>
#include <cmath>

namespace nonlocal {

// Points always carry three components; unused trailing ones stay zero.
using Point = std::array<double, 3>;

inline double dot(const Point& a, const Point& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Point& a) { return std::sqrt(dot(a, a)); }

inline Point axpy(double t, const Point& d, const Point& x) {
  return {x[0] + t * d[0], x[1] + t * d[1], x[2] + t * d[2]};
}

inline Point scaled(double t, const Point& a) { return {t * a[0], t * a[1], t * a[2]}; }

inline Point unit_axis(int i) {
  Point e{0.0, 0.0, 0.0};
  e[i] = 1.0;
  return e;
}

/// Orthonormal frame {e, f1, f2} in dimension `dim` whose first vector is the
/// normalized `pole`. Components beyond `dim` are zero.
struct Frame {
  Point e;
  Point f1;
  Point f2;
};

Frame make_frame(int dim, const Point& pole);

}  // namespace nonlocal

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"

namespace difflab {

using Point = std::vector<double>;

inline double dot(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const double* a, int d) { return std::sqrt(dot(a, a, d)); }

inline double dist2(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    const double u = a[i] - b[i];
    s += u * u;
  }
  return std::sqrt(s);
}

// Axis-aligned box, lo[i] <= hi[i].
struct Box {
  std::vector<double> lo, hi;

  Box() = default;
  Box(std::vector<double> l, std::vector<double> h) : lo(std::move(l)), hi(std::move(h)) {
    require(lo.size() == hi.size() && !lo.empty(), errc::invalid_argument, "box: dimension mismatch");
    for (size_t i = 0; i < lo.size(); ++i)
      require(lo[i] < hi[i], errc::invalid_argument, "box: lo must be < hi");
  }

  static Box cube(int dim, double half) {
    require(dim >= 1 && half > 0, errc::invalid_argument, "box: bad cube spec");
    return Box(std::vector<double>(dim, -half), std::vector<double>(dim, half));
  }

  int dim() const { return static_cast<int>(lo.size()); }
  double width(int i) const { return hi[i] - lo[i]; }

  double volume() const {
    double v = 1.0;
    for (int i = 0; i < dim(); ++i) v *= width(i);
    return v;
  }

  bool contains(const double* x, double margin = 0.0) const {
    for (int i = 0; i < dim(); ++i)
      if (x[i] < lo[i] + margin || x[i] > hi[i] - margin) return false;
    return true;
  }

  Box inflated(double eps) const {
    Box b = *this;
    for (int i = 0; i < dim(); ++i) {
      b.lo[i] -= eps;
      b.hi[i] += eps;
    }
    return b;
  }

  // Smallest gap between this box and the enclosing box, over all faces.
  double clearance(const Box& outer) const {
    require(outer.dim() == dim(), errc::invalid_argument, "box: dimension mismatch");
    double c = std::numeric_limits<double>::infinity();
    for (int i = 0; i < dim(); ++i) {
      c = std::min(c, lo[i] - outer.lo[i]);
      c = std::min(c, outer.hi[i] - hi[i]);
    }
    return c;
  }

  static Box bounding(const Box& a, const Box& b) {
    require(a.dim() == b.dim(), errc::invalid_argument, "box: dimension mismatch");
    Box r = a;
    for (int i = 0; i < a.dim(); ++i) {
      r.lo[i] = std::min(a.lo[i], b.lo[i]);
      r.hi[i] = std::max(a.hi[i], b.hi[i]);
    }
    return r;
  }

  Point center() const {
    Point c(dim());
    for (int i = 0; i < dim(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
    return c;
  }
};

}  // namespace difflab

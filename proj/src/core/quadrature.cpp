#include "quadrature.hpp"

#include <cmath>

#include "errors.hpp"

namespace difflab {

namespace {

// Simpson weight pattern 1,4,2,4,...,4,1 scaled by h/3.
std::vector<double> simpson_weights(double lo, double hi, int n) {
  const double h = (hi - lo) / (n - 1);
  std::vector<double> w(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double c = (i == 0 || i == n - 1) ? 1.0 : ((i & 1) ? 4.0 : 2.0);
    w[static_cast<size_t>(i)] = c * h / 3.0;
  }
  return w;
}

std::vector<double> axis_nodes(double lo, double hi, int n) {
  const double h = (hi - lo) / (n - 1);
  std::vector<double> x(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = lo + i * h;
  x.back() = hi;
  return x;
}

void check_nodes(int n) {
  require(n >= 3 && (n % 2) == 1, errc::invalid_argument, "quadrature: nodes_per_axis must be odd >= 3");
}

}  // namespace

int default_refinement_cap(int dim) {
  switch (dim) {
    case 1: return 8193;
    case 2: return 2049;
    default: return 769;
  }
}

double simpson_tensor(const Integrand& f, const Box& box, int n) {
  check_nodes(n);
  const int d = box.dim();
  if (d == 1) {
    const auto xs = axis_nodes(box.lo[0], box.hi[0], n);
    const auto ws = simpson_weights(box.lo[0], box.hi[0], n);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += ws[i] * f(&xs[i]);
    return s;
  }
  if (d == 2) {
    const auto xs = axis_nodes(box.lo[0], box.hi[0], n);
    const auto ys = axis_nodes(box.lo[1], box.hi[1], n);
    const auto wx = simpson_weights(box.lo[0], box.hi[0], n);
    const auto wy = simpson_weights(box.lo[1], box.hi[1], n);
    double s = 0.0;
    double p[2];
    for (int i = 0; i < n; ++i) {
      p[0] = xs[i];
      double row = 0.0;
      for (int j = 0; j < n; ++j) {
        p[1] = ys[j];
        row += wy[j] * f(p);
      }
      s += wx[i] * row;
    }
    return s;
  }
  if (d == 3) {
    const auto xs = axis_nodes(box.lo[0], box.hi[0], n);
    const auto ys = axis_nodes(box.lo[1], box.hi[1], n);
    const auto zs = axis_nodes(box.lo[2], box.hi[2], n);
    const auto wx = simpson_weights(box.lo[0], box.hi[0], n);
    const auto wy = simpson_weights(box.lo[1], box.hi[1], n);
    const auto wz = simpson_weights(box.lo[2], box.hi[2], n);
    double s = 0.0;
    double p[3];
    for (int i = 0; i < n; ++i) {
      p[0] = xs[i];
      double plane = 0.0;
      for (int j = 0; j < n; ++j) {
        p[1] = ys[j];
        double row = 0.0;
        for (int k = 0; k < n; ++k) {
          p[2] = zs[k];
          row += wz[k] * f(p);
        }
        plane += wy[j] * row;
      }
      s += wx[i] * plane;
    }
    return s;
  }
  // generic odometer fallback
  std::vector<std::vector<double>> xs(static_cast<size_t>(d)), ws(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    xs[i] = axis_nodes(box.lo[i], box.hi[i], n);
    ws[i] = simpson_weights(box.lo[i], box.hi[i], n);
  }
  std::vector<int> idx(static_cast<size_t>(d), 0);
  std::vector<double> p(static_cast<size_t>(d));
  double s = 0.0;
  while (true) {
    double w = 1.0;
    for (int i = 0; i < d; ++i) {
      p[i] = xs[i][idx[i]];
      w *= ws[i][idx[i]];
    }
    s += w * f(p.data());
    int axis = d - 1;
    while (axis >= 0 && ++idx[axis] == n) idx[axis--] = 0;
    if (axis < 0) break;
  }
  return s;
}

void simpson_tensor_multi(const MultiIntegrand& f, int n_out, const Box& box, int n, double* out) {
  check_nodes(n);
  const int d = box.dim();
  std::vector<std::vector<double>> xs(static_cast<size_t>(d)), ws(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    xs[i] = axis_nodes(box.lo[i], box.hi[i], n);
    ws[i] = simpson_weights(box.lo[i], box.hi[i], n);
  }
  for (int i = 0; i < n_out; ++i) out[i] = 0.0;
  std::vector<double> val(static_cast<size_t>(n_out));
  std::vector<int> idx(static_cast<size_t>(d), 0);
  std::vector<double> p(static_cast<size_t>(d));
  while (true) {
    double w = 1.0;
    for (int i = 0; i < d; ++i) {
      p[i] = xs[i][idx[i]];
      w *= ws[i][idx[i]];
    }
    f(p.data(), val.data());
    for (int i = 0; i < n_out; ++i) out[i] += w * val[i];
    int axis = d - 1;
    while (axis >= 0 && ++idx[axis] == n) idx[axis--] = 0;
    if (axis < 0) break;
  }
}

QuadResult integrate_refined(const Integrand& f, const Box& box, double abs_tol, double rel_tol,
                             int n0, int n_max) {
  check_nodes(n0);
  if (n_max <= 0) n_max = default_refinement_cap(box.dim());
  QuadResult r;
  double prev = simpson_tensor(f, box, n0);
  int n = n0;
  while (true) {
    const int n2 = 2 * n - 1;
    if (n2 > n_max) {
      r.value = prev;
      r.error_estimate = std::numeric_limits<double>::quiet_NaN();
      r.nodes_per_axis = n;
      r.converged = false;
      return r;
    }
    const double cur = simpson_tensor(f, box, n2);
    const double diff = std::abs(cur - prev);
    const double tol = std::max(abs_tol, rel_tol * std::abs(cur));
    if (diff <= tol) {
      r.value = cur + (cur - prev) / 15.0;  // Richardson step for the h^4 rule
      r.error_estimate = diff;
      r.nodes_per_axis = n2;
      r.converged = true;
      return r;
    }
    prev = cur;
    n = n2;
  }
}

}  // namespace difflab

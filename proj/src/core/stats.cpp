#include "stats.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace difflab {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / 1.4142135623730951); }

Moments moments(const std::vector<double>& xs) {
  Moments m;
  m.n = xs.size();
  if (m.n == 0) return m;
  double s = 0.0;
  for (double v : xs) s += v;
  m.mean = s / static_cast<double>(m.n);
  if (m.n < 2) return m;
  double s2 = 0.0, s4 = 0.0;
  for (double v : xs) {
    const double c = v - m.mean;
    s2 += c * c;
    s4 += c * c * c * c;
  }
  m.variance = s2 / static_cast<double>(m.n - 1);
  m.m4 = s4 / static_cast<double>(m.n);
  return m;
}

double variance_of_variance(const std::vector<double>& xs) {
  const Moments m = moments(xs);
  if (m.n < 2) return 0.0;
  const double s2 = m.variance;
  return (m.m4 - s2 * s2) / static_cast<double>(m.n);
}

double ks_normal(std::vector<double> xs, double mean, double sd) {
  require(!xs.empty() && sd > 0, errc::invalid_argument, "ks_normal: bad input");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double F = normal_cdf((xs[i] - mean) / sd);
    d = std::max(d, F - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - F);
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  require(!a.empty() && !b.empty(), errc::invalid_argument, "ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double median(std::vector<double> xs) {
  require(!xs.empty(), errc::invalid_argument, "median: empty sample");
  const size_t n = xs.size();
  std::sort(xs.begin(), xs.end());
  return (n % 2 == 1) ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

double batch_means_variance(const std::vector<double>& values, double dt, double batch_length) {
  require(dt > 0 && batch_length > 0, errc::invalid_argument, "batch_means: bad input");
  const size_t per_batch = static_cast<size_t>(std::floor(batch_length / dt + 1e-9));
  require(per_batch >= 2, errc::invalid_argument, "batch_means: batch shorter than two steps");
  const size_t n_batches = values.size() / per_batch;
  require(n_batches >= 8, errc::precondition, "batch_means: need at least 8 batches");
  std::vector<double> means(n_batches, 0.0);
  for (size_t b = 0; b < n_batches; ++b) {
    double s = 0.0;
    for (size_t k = 0; k < per_batch; ++k) s += values[b * per_batch + k];
    means[b] = s / static_cast<double>(per_batch);
  }
  const Moments m = moments(means);
  // Var(t^{-1/2} \int g) ~ b * Var(batch mean) for batch length b.
  return static_cast<double>(per_batch) * dt * m.variance;
}

void solve_linear(std::vector<double>& A, std::vector<double>& b, int n) {
  require(static_cast<int>(A.size()) == n * n && static_cast<int>(b.size()) == n,
          errc::invalid_argument, "solve_linear: shape mismatch");
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[r * n + col]) > std::abs(A[piv * n + col])) piv = r;
    require(std::abs(A[piv * n + col]) > 1e-300, errc::numeric, "solve_linear: singular system");
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(A[piv * n + c], A[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    const double inv = 1.0 / A[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      const double f = A[r * n + col] * inv;
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) A[r * n + c] -= f * A[col * n + c];
      b[r] -= f * b[col];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= A[r * n + c] * b[c];
    b[r] = s / A[r * n + r];
  }
}

std::vector<double> symmetric_eigenvalues(std::vector<double> A, int n) {
  require(static_cast<int>(A.size()) == n * n, errc::invalid_argument, "eigen: shape mismatch");
  auto at = [&](int i, int j) -> double& { return A[i * n + j]; };
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-28) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) ev[static_cast<size_t>(i)] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, errc::invalid_argument, "fit_slope: bad input");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  require(std::abs(denom) > 1e-300, errc::numeric, "fit_slope: degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace difflab

#include "empirical.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "quadrature.hpp"

namespace difflab {

double time_average_G(const std::function<double(const double*)>& f, const PathGrid& path) {
  const size_t n = path.steps();
  require(n >= 1, errc::precondition, "time_average_G: path has no steps");
  const double t = path.horizon();
  double sum = 0.0;
  for (size_t k = 0; k < n; ++k) sum += f(path.state(k));
  return sum * path.dt / std::sqrt(t);
}

double kde_density(const PathGrid& path, const RadialKernel& kernel, double h, const double* x) {
  require(h > 0.0, errc::precondition, "kde_density: bandwidth must be positive");
  require(path.dim == kernel.dim, errc::invalid_argument, "kde_density: dimension mismatch");
  const size_t n = path.steps();
  require(n >= 1, errc::precondition, "kde_density: path has no steps");
  const double t = path.horizon();
  double sum = 0.0;
  for (size_t k = 0; k < n; ++k) sum += kernel.eval_scaled(h, x, path.state(k));
  return sum * path.dt / t;
}

double smoothed_S(const ScalarField& f, const PathGrid& path, const RadialKernel& kernel, double h,
                  SmoothedMode mode, int conv_nodes, int direct_nodes) {
  require(h > 0.0, errc::precondition, "smoothed_S: bandwidth must be positive");
  require(f.dim == path.dim && f.dim == kernel.dim, errc::invalid_argument,
          "smoothed_S: dimension mismatch");
  const double t = path.horizon();
  if (mode == SmoothedMode::fast) {
    // S_{t,h}(f) = G_t(f * K_h); K is radial so K(-u) = K(u).
    const size_t n = path.steps();
    double sum = 0.0;
    for (size_t k = 0; k < n; ++k) sum += convolve_value(f, kernel, h, path.state(k), conv_nodes);
    return sum * path.dt / std::sqrt(t);
  }
  auto integrand = [&](const double* x) { return f.eval(x) * kde_density(path, kernel, h, x); };
  return std::sqrt(t) * simpson_tensor(integrand, f.support, direct_nodes);
}

double intermediate_H(const TestFunction& g, const DiffusionModel& model, const PathGrid& path,
                      const RadialKernel& kernel, double h, int conv_nodes) {
  require(g.dim == model.dim && g.dim == path.dim, errc::invalid_argument,
          "intermediate_H: dimension mismatch");
  check_convolution_clearance(g.support, model.working_box, h);
  const int d = g.dim;
  const size_t n = path.steps();
  const double t = path.horizon();
  const Box reach = g.support.inflated(h);
  double a[9], b[3];
  double sum = 0.0;
  for (size_t k = 0; k < n; ++k) {
    const double* x = path.state(k);
    if (!reach.contains(x)) continue;  // A(g*K_h) vanishes outside support + h
    const ConvolutionJet jet = convolve_jet(g, kernel, h, x, conv_nodes);
    model.diffusion_matrix(x, a);
    model.drift(x, b);
    double v = 0.0;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) v += 0.5 * a[i * d + j] * jet.hess[static_cast<size_t>(i * d + j)];
      v += b[i] * jet.grad[static_cast<size_t>(i)];
    }
    sum += v;
  }
  return sum * path.dt / std::sqrt(t);
}

double occupation_fraction(const PathGrid& path, const double* x, double r) {
  require(r > 0.0, errc::precondition, "occupation_fraction: radius must be positive");
  const size_t n = path.steps();
  size_t hits = 0;
  for (size_t k = 0; k < n; ++k)
    if (dist2(x, path.state(k), path.dim) <= r) ++hits;
  return static_cast<double>(hits) * path.dt / path.horizon();
}

SupOccupation sup_occupation_weighted(const double* states, size_t count, int dim,
                                      const std::vector<double>& weights, double total_time,
                                      const Box& box, double r, double grid_step) {
  require(r > 0.0, errc::precondition, "sup_occupation: radius must be positive");
  require(grid_step > 0.0 && grid_step <= 0.5 * r + 1e-15, errc::precondition,
          "sup_occupation: grid_step must be <= r/2");
  require(box.dim() == dim, errc::invalid_argument, "sup_occupation: dimension mismatch");
  require(dim <= 3, errc::invalid_argument, "sup_occupation: dim must be <= 3");
  const int d = dim;
  std::vector<int> counts(static_cast<size_t>(d));
  size_t total = 1;
  for (int i = 0; i < d; ++i) {
    counts[i] = static_cast<int>(std::floor(box.width(i) / grid_step + 1e-9)) + 1;
    require(counts[i] >= 1, errc::precondition, "sup_occupation: empty grid");
    total *= static_cast<size_t>(counts[i]);
  }
  std::vector<size_t> strides(static_cast<size_t>(d), 1);
  for (int i = d - 2; i >= 0; --i) strides[i] = strides[i + 1] * static_cast<size_t>(counts[i + 1]);

  std::vector<double> occ(total, 0.0);
  std::vector<int> jmin(static_cast<size_t>(d)), jmax(static_cast<size_t>(d)), idx(static_cast<size_t>(d));
  const double r2 = r * r * (1.0 + 1e-12);
  std::vector<double> centroid(static_cast<size_t>(d), 0.0);
  double weight_total = 0.0;
  for (size_t k = 0; k < count; ++k) {
    const double* p = states + static_cast<size_t>(d) * k;
    const double wk = weights.empty() ? 1.0 : weights[k];
    for (int i = 0; i < d; ++i) centroid[static_cast<size_t>(i)] += wk * p[i];
    weight_total += wk;
    bool any = true;
    for (int i = 0; i < d; ++i) {
      jmin[i] = std::max(0, static_cast<int>(std::ceil((p[i] - r - box.lo[i]) / grid_step - 1e-12)));
      jmax[i] = std::min(counts[i] - 1,
                         static_cast<int>(std::floor((p[i] + r - box.lo[i]) / grid_step + 1e-12)));
      if (jmin[i] > jmax[i]) {
        any = false;
        break;
      }
    }
    if (!any) continue;
    const double w = weights.empty() ? 1.0 : weights[k];
    for (int i = 0; i < d; ++i) idx[i] = jmin[i];
    while (true) {
      double d2 = 0.0;
      size_t flat = 0;
      for (int i = 0; i < d; ++i) {
        const double c = box.lo[i] + idx[i] * grid_step - p[i];
        d2 += c * c;
        flat += static_cast<size_t>(idx[i]) * strides[i];
      }
      if (d2 <= r2) occ[flat] += w;
      int axis = d - 1;
      while (axis >= 0 && ++idx[axis] > jmax[axis]) {
        idx[axis] = jmin[axis];
        --axis;
      }
      if (axis < 0) break;
    }
  }

  if (weight_total > 0.0)
    for (int i = 0; i < d; ++i) centroid[static_cast<size_t>(i)] /= weight_total;
  auto node_coords = [&](size_t flat, double* out) {
    size_t rem = flat;
    for (int i = 0; i < d; ++i) {
      const size_t j = rem / strides[i];
      rem %= strides[i];
      out[i] = box.lo[i] + static_cast<double>(j) * grid_step;
    }
  };
  // argmax; exact ties resolved toward the occupancy centroid
  size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  double coords[3];
  for (size_t i = 0; i < total; ++i) {
    if (occ[i] < occ[best]) continue;
    node_coords(i, coords);
    double dist = 0.0;
    for (int j = 0; j < d; ++j) {
      const double c = coords[j] - centroid[static_cast<size_t>(j)];
      dist += c * c;
    }
    if (occ[i] > occ[best] || dist < best_dist) {
      best = i;
      best_dist = dist;
    }
  }
  SupOccupation result;
  result.value = occ[best] / (total_time * std::pow(r, d));
  result.location.resize(static_cast<size_t>(d));
  node_coords(best, result.location.data());
  return result;
}

SupOccupation sup_occupation_grid(const PathGrid& path, const Box& box, double r,
                                  double grid_step) {
  const size_t n = path.steps();
  std::vector<double> w(n, path.dt);
  return sup_occupation_weighted(path.states.data(), n, path.dim, w, path.horizon(), box, r,
                                 grid_step);
}

void write_samples_csv_header(std::ostream& out) { out << "kind,t,h,seed,value\n"; }

void write_samples_csv(std::ostream& out, const std::vector<FunctionalSample>& samples) {
  char buf[128];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%llu,%.17g\n", s.kind.c_str(), s.t, s.h,
                  static_cast<unsigned long long>(s.seed), s.value);
    out << buf;
  }
}

}  // namespace difflab

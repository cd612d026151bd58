#include "generator.hpp"

#include <cmath>

#include "quadrature.hpp"
#include "stats.hpp"

namespace difflab {

double apply_generator(const DiffusionModel& model, const TestFunction& g, const double* x) {
  const int d = model.dim;
  double grad[3], b[3];
  double hess[9], a[9];
  require(d <= 3, errc::invalid_argument, "apply_generator: dim must be <= 3");
  g.gradient(x, grad);
  g.hessian(x, hess);
  model.drift(x, b);
  model.diffusion_matrix(x, a);
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) s += 0.5 * a[i * d + j] * hess[i * d + j];
    s += b[i] * grad[i];
  }
  return s;
}

double carre_du_champ(const DiffusionModel& model, const TestFunction& g,
                      const TestFunction& gtilde, const double* x) {
  const int d = model.dim;
  require(d <= 3, errc::invalid_argument, "carre_du_champ: dim must be <= 3");
  double g1[3], g2[3], a[9];
  g.gradient(x, g1);
  gtilde.gradient(x, g2);
  model.diffusion_matrix(x, a);
  double s = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) s += g1[i] * a[i * d + j] * g2[j];
  return s;
}

double carre_du_champ(const DiffusionModel& model, const TestFunction& g, const double* x) {
  return carre_du_champ(model, g, g, x);
}

double mu_integral(const DiffusionModel& model, const Integrand& phi, const Box& box,
                   double rel_tol) {
  const double z = model.normalization;
  auto weighted = [&model, &phi, z](const double* x) {
    return phi(x) * std::exp(model.log_density(x)) / z;
  };
  const QuadResult r = integrate_refined(weighted, box, 1e-12, rel_tol, 33);
  require(r.converged, errc::numeric, "mu_integral: quadrature failed to converge");
  return r.value;
}

double asymptotic_variance(const DiffusionModel& model, const TestFunction& g) {
  const Box& box = g.support;
  const double via_gamma =
      mu_integral(model, [&](const double* x) { return carre_du_champ(model, g, x); }, box);
  const double via_dirichlet =
      -2.0 * mu_integral(model, [&](const double* x) { return g.value(x) * apply_generator(model, g, x); },
                         box);
  const double scale = std::max({std::abs(via_gamma), std::abs(via_dirichlet), 1e-12});
  require(std::abs(via_gamma - via_dirichlet) <= 1e-4 * scale, errc::numeric,
          "asymptotic_variance: -2 int g Ag and int Gamma(g) disagree beyond 1e-4 relative "
          "(inconsistent derivatives or quadrature)");
  return via_gamma;
}

double limit_covariance(const DiffusionModel& model, const TestFunction& g1,
                        const TestFunction& g2) {
  const Box box = Box::bounding(g1.support, g2.support);
  return -mu_integral(model,
                      [&](const double* x) {
                        return g1.value(x) * apply_generator(model, g2, x) +
                               g2.value(x) * apply_generator(model, g1, x);
                      },
                      box);
}

double metric_dG(const DiffusionModel& model, const TestFunction& g1, const TestFunction& g2) {
  const TestFunction diff = tf_difference(g1, g2);
  const double v =
      -2.0 * mu_integral(model,
                         [&](const double* x) { return diff.value(x) * apply_generator(model, diff, x); },
                         diff.support);
  require(v >= -1e-10, errc::numeric, "metric_dG: negative squared distance beyond tolerance");
  return std::sqrt(std::max(v, 0.0));
}

double dynkin_residual(const DiffusionModel& model, const TestFunction& g, const PathGrid& path) {
  require(path.dim == model.dim, errc::invalid_argument, "dynkin_residual: dimension mismatch");
  const size_t n = path.steps();
  double sum = 0.0;
  for (size_t k = 0; k < n; ++k) sum += apply_generator(model, g, path.state(k));
  return g.value(path.state(n)) - g.value(path.state(0)) - sum * path.dt;
}

GaussLimitSpec GaussLimitSpec::build(const DiffusionModel& model,
                                     const std::vector<TestFunction>& gs) {
  GaussLimitSpec spec;
  const int m = static_cast<int>(gs.size());
  spec.variance_matrix.assign(static_cast<size_t>(m * m), 0.0);
  spec.metric_values.assign(static_cast<size_t>(m * m), 0.0);
  for (const auto& g : gs) spec.labels.push_back(g.label);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const double c = limit_covariance(model, gs[static_cast<size_t>(i)], gs[static_cast<size_t>(j)]);
      spec.variance_matrix[static_cast<size_t>(i * m + j)] = c;
      spec.variance_matrix[static_cast<size_t>(j * m + i)] = c;
      if (i != j) {
        const double d = metric_dG(model, gs[static_cast<size_t>(i)], gs[static_cast<size_t>(j)]);
        spec.metric_values[static_cast<size_t>(i * m + j)] = d;
        spec.metric_values[static_cast<size_t>(j * m + i)] = d;
      }
    }
  }
  return spec;
}

double GaussLimitSpec::min_eigenvalue() const {
  const auto ev = symmetric_eigenvalues(variance_matrix, size());
  return ev.front();
}

bool GaussLimitSpec::positive_semidefinite(double floor) const {
  return min_eigenvalue() >= floor;
}

}  // namespace difflab

#pragma once

#include <vector>

#include "kernel.hpp"
#include "model.hpp"
#include "path.hpp"
#include "quadrature.hpp"
#include "test_function.hpp"

namespace difflab {

// Ag = 1/2 tr(a(x) Hess g(x)) + b(x) . grad g(x)
double apply_generator(const DiffusionModel& model, const TestFunction& g, const double* x);

// Gamma(g, gtilde) = <grad g, a grad gtilde>
double carre_du_champ(const DiffusionModel& model, const TestFunction& g,
                      const TestFunction& gtilde, const double* x);
double carre_du_champ(const DiffusionModel& model, const TestFunction& g, const double* x);

// int phi d mu over the given box, by refinement-certified Simpson.
double mu_integral(const DiffusionModel& model, const Integrand& phi, const Box& box,
                   double rel_tol = 1e-6);

// sigma^2(Ag) = int Gamma(g) d mu, cross-checked against -2 int g Ag d mu
// (relative 1e-4); a mismatch signals inconsistent derivatives or quadrature
// and is reported as an error.
double asymptotic_variance(const DiffusionModel& model, const TestFunction& g);

// -int (g1 A g2 + g2 A g1) d mu
double limit_covariance(const DiffusionModel& model, const TestFunction& g1,
                        const TestFunction& g2);

// d_G(g1, g2) = sqrt(-2 int (g1-g2) A (g1-g2) d mu)
double metric_dG(const DiffusionModel& model, const TestFunction& g1, const TestFunction& g2);

// Dynkin residual M_t^g = g(X_t) - g(X_0) - int_0^t Ag(X_u) du (left sums).
double dynkin_residual(const DiffusionModel& model, const TestFunction& g, const PathGrid& path);

// Finite family of test functions with the covariance of the Gaussian limit
// and the pairwise d_G table.
struct GaussLimitSpec {
  std::vector<std::string> labels;
  std::vector<double> variance_matrix;  // m*m row-major, symmetric
  std::vector<double> metric_values;    // m*m row-major d_G distances

  static GaussLimitSpec build(const DiffusionModel& model, const std::vector<TestFunction>& gs);
  int size() const { return static_cast<int>(labels.size()); }
  double min_eigenvalue() const;
  bool positive_semidefinite(double floor = -1e-8) const;
};

}  // namespace difflab

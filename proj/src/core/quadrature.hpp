#pragma once

#include <functional>
#include <vector>

#include "geometry.hpp"

namespace difflab {

// Scalar integrand over points given as contiguous coordinates.
using Integrand = std::function<double(const double*)>;
// Vector integrand writing n_out values per point.
using MultiIntegrand = std::function<void(const double*, double*)>;

// Composite Simpson rule on a tensor grid with n (odd, >= 3) nodes per axis.
double simpson_tensor(const Integrand& f, const Box& box, int nodes_per_axis);

void simpson_tensor_multi(const MultiIntegrand& f, int n_out, const Box& box, int nodes_per_axis,
                          double* out);

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int nodes_per_axis = 0;
  bool converged = false;
};

// Doubles the per-axis node count until two consecutive levels agree within
// max(abs_tol, rel_tol * |value|). The reported value takes one Richardson step.
QuadResult integrate_refined(const Integrand& f, const Box& box, double abs_tol,
                             double rel_tol = 0.0, int n0 = 33, int n_max = 0);

// Default per-dimension refinement ceilings (kept modest in 3-D).
int default_refinement_cap(int dim);

}  // namespace difflab

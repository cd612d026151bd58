#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "generator.hpp"
#include "kernel.hpp"
#include "path.hpp"

namespace difflab {

// G_t(f) = t^{-1/2} int_0^t f(X_u) du, left-endpoint Riemann sum.
double time_average_G(const std::function<double(const double*)>& f, const PathGrid& path);

// Kernel estimate of the invariant density at x.
double kde_density(const PathGrid& path, const RadialKernel& kernel, double h, const double* x);

enum class SmoothedMode { fast, direct_quadrature };

// S_{t,h}(f) = sqrt(t) int f pi_hat d lambda. Fast mode uses the convolution
// identity S = G_t(f * K_h); the direct quadrature over the support box is the
// independent oracle route.
double smoothed_S(const ScalarField& f, const PathGrid& path, const RadialKernel& kernel, double h,
                  SmoothedMode mode = SmoothedMode::fast, int conv_nodes = 33,
                  int direct_nodes = 1025);

// H_{t,h}(g) = G_t(A(g * K_h)) via convolved gradient/Hessian.
double intermediate_H(const TestFunction& g, const DiffusionModel& model, const PathGrid& path,
                      const RadialKernel& kernel, double h, int conv_nodes = 33);

// Fraction of (left-endpoint) grid time spent in the closed ball B_x(r).
double occupation_fraction(const PathGrid& path, const double* x, double r);

struct SupOccupation {
  double value = 0.0;  // r^-d * occupation fraction at the maximizing node
  Point location;
};

// Grid supremum of r^-d (1/t) int 1_{B_x(r)}(X_u) du over nodes of `box`
// spaced grid_step apart; single binning pass over the path.
SupOccupation sup_occupation_grid(const PathGrid& path, const Box& box, double r,
                                  double grid_step);

// Same statistic on an arbitrary flat state array with per-point weights;
// shared by the path version and the time-change dual computation.
SupOccupation sup_occupation_weighted(const double* states, size_t count, int dim,
                                      const std::vector<double>& weights, double total_time,
                                      const Box& box, double r, double grid_step);

struct FunctionalSample {
  std::string kind;  // G | S | H | occupation
  double t = 0.0;
  double h = 0.0;
  uint64_t seed = 0;
  double value = 0.0;
};

void write_samples_csv_header(std::ostream& out);
void write_samples_csv(std::ostream& out, const std::vector<FunctionalSample>& samples);

}  // namespace difflab

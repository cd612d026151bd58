#pragma once

#include <functional>
#include <vector>

#include "report.hpp"

namespace difflab {

// Static-partition parallel map over replicate indices. Results must be
// written by index so reductions are schedule-independent.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

// zeta_d variance-inflation factor: max{1, log(1/x)^2} in d=2, x^{1/d-1/2}
// for d >= 3.
double zeta_factor(int d, double x);

double ball_volume(int d, double radius);

struct McOptions {
  double t = 50.0;
  double dt = 0.01;
  int replicates = 2000;
  uint64_t seed = 0;
  int threads = 0;              // 0: hardware concurrency
  double ks_threshold = 0.05;   // fixed-reference KS
  double variance_band = 0.10;  // relative band around sigma^2
};

// Simulates stationary replicate paths and tests G_t(Ag) against the limit
// N(0, sigma^2(g)): sample variance within the band, KS below threshold.
ExperimentReport mc_clt(const DiffusionModel& model, const TestFunction& g, const McOptions& opts);

struct SmoothedOptions : McOptions {
  double two_sample_ks_threshold = 0.08;
  double variance_band_smoothed = 0.15;
  double ks_threshold_smoothed = 0.07;
  int conv_nodes = 33;
};

// Smoothed process S_{t,h}(Ag) per replicate, paired with G_t(Ag) on the same
// replicate seeds; two-sample KS checks distributional agreement and the mean
// check flags over-smoothing bias (negative control with fixed large h).
ExperimentReport mc_clt_smoothed(const DiffusionModel& model, const TestFunction& g,
                                 const RadialKernel& kernel, double h, const SmoothedOptions& opts);

enum class BernsteinVarianceMode {
  poisson_exact,  // integrand is Ag; sigma^2 = asymptotic_variance(g)
  batch_means,    // integrand is g itself, centered; sigma^2 from a calibration path
};

struct BernsteinOptions {
  double t = 50.0;
  double dt = 0.01;
  int replicates = 2000;
  uint64_t seed = 0;
  int threads = 0;
  std::vector<double> thresholds = {0.0, 0.3, 0.6, 0.9, 1.2, 1.5, 1.8, 2.1};
  double calibration_t = 2000.0;  // batch-means calibration horizon
};

// Empirical exceedance of t^{-1/2} int g(X_u) du against the Bernstein-type
// bound exp(-r^2 / (2 (sigma^2 + c_P |g|_sup r / sqrt(t)))).
ExperimentReport bernstein_check(const DiffusionModel& model, const TestFunction& g,
                                 BernsteinVarianceMode mode, const BernsteinOptions& opts);

struct ZetaOptions {
  std::vector<double> t_grid = {100.0};
  std::vector<double> delta_grid = {0.3, 0.2, 0.1};
  double dt = 0.005;
  int replicates = 500;
  uint64_t seed = 0;
  int threads = 0;
  Point center;  // defaults to the origin
  double ratio_limit = 10.0;
};

// Variance of t^{-1/2} delta^{-d} occupation of B_center(delta), normalized by
// zeta_d^2(lambda(B_1(delta))); the normalized values must stay within a
// bounded ratio across the delta grid.
ExperimentReport zeta_scaling(const DiffusionModel& model, const ZetaOptions& opts);

struct OccupationOptions {
  std::vector<double> t_grid = {25.0, 50.0, 100.0};
  std::vector<double> r_grid = {0.1, 0.05, 0.02};
  double dt = 2e-4;
  int replicates = 50;
  uint64_t seed = 0;
  int threads = 0;
  Box box = Box::cube(2, 1.0);
  double grid_step_factor = 0.5;  // grid_step = factor * r
  double median_ratio_limit = 5.0;
  double trend_slope_floor = -0.5;
};

// Planar-BM sup occupation normalized by (|log r| + log t)/t; medians must be
// stable across the (t, r) grid and show no decreasing trend in t.
ExperimentReport occupation_scaling_planar(const OccupationOptions& opts);

struct TimeChangeOptions {
  Box box = Box::cube(2, 2.0);
  double r = 0.25;
  double grid_step_factor = 0.5;
  int dual_cells_per_step = 4;
  double agreement_rel_tol = 0.05;
};

// Occupation of X = f(B) computed directly and through the quadratic-variation
// clock change of variables; the two routes must agree.
ExperimentReport time_changed_occupation(const TimeChangeRecord& record,
                                         const TimeChangeOptions& opts);

struct BiasAuditOptions {
  std::vector<double> h_grid = {0.2, 0.1, 0.05};
  double t = 50.0;
  double dt = 0.01;
  uint64_t seed = 0;
  double eps = 0.25;        // C_eps neighborhood of the support box
  double fit_factor = 3.0;  // per-h ratio must stay within this factor of the fit
  int conv_nodes = 65;
};

// Tabulates sqrt(t) * moduli of pi, b, a against the |S - G| gap on a fixed
// path; the gap/bound ratio must stay within fit_factor of its log-space fit.
ExperimentReport smoothing_bias_audit(const DiffusionModel& model, const TestFunction& g,
                                      const RadialKernel& kernel, const BiasAuditOptions& opts);

// max of |fn| on a tensor grid over box (used for sup-norm estimates).
double sup_on_grid(const std::function<double(const double*)>& fn, const Box& box,
                   int nodes_per_axis);

}  // namespace difflab

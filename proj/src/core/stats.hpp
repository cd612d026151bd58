#pragma once

#include <cstddef>
#include <vector>

namespace difflab {

double normal_cdf(double x);

struct Moments {
  size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double m4 = 0.0;        // central fourth moment
};

Moments moments(const std::vector<double>& xs);

// (m4 - s^4)/n, the large-sample variance of the sample variance.
double variance_of_variance(const std::vector<double>& xs);

// One-sample Kolmogorov-Smirnov distance against N(mean, sd^2).
double ks_normal(std::vector<double> xs, double mean, double sd);

// Two-sample Kolmogorov-Smirnov distance.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

double median(std::vector<double> xs);

// Limiting variance of t^{-1/2} * integral of g along a discretized path,
// estimated from the per-step values g(X_k) by non-overlapping batch means.
double batch_means_variance(const std::vector<double>& values, double dt, double batch_length);

// In-place Gauss elimination with partial pivoting; A is n x n row-major.
void solve_linear(std::vector<double>& A, std::vector<double>& b, int n);

// Eigenvalues of a symmetric n x n matrix (row-major) by cyclic Jacobi.
std::vector<double> symmetric_eigenvalues(std::vector<double> A, int n);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace difflab

#include "kernel.hpp"

#include <cmath>

#include "quadrature.hpp"
#include "stats.hpp"

namespace difflab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// int_{S^{d-1}} w_1^{2m} dsigma = 2 pi^{(d-1)/2} Gamma(m+1/2) / Gamma(m+d/2)
double sphere_moment(int m, int d) {
  return 2.0 * std::pow(kPi, 0.5 * (d - 1)) *
         std::exp(std::lgamma(m + 0.5) - std::lgamma(m + 0.5 * d));
}

// int_0^1 s^{alpha-1} (1-s)^3 ds / 2 = 3 / (alpha (alpha+1) (alpha+2) (alpha+3))
double radial_beta(double alpha) {
  return 3.0 / (alpha * (alpha + 1.0) * (alpha + 2.0) * (alpha + 3.0));
}

double poly_eval(const std::vector<double>& c, double s) {
  double v = 0.0;
  for (size_t j = c.size(); j-- > 0;) v = v * s + c[j];
  return v;
}

double poly_deriv(const std::vector<double>& c, double s) {
  double v = 0.0;
  for (size_t j = c.size(); j-- > 1;) v = v * s + static_cast<double>(j) * c[j];
  return v;
}

double poly_deriv2(const std::vector<double>& c, double s) {
  double v = 0.0;
  for (size_t j = c.size(); j-- > 2;) v = v * s + static_cast<double>(j * (j - 1)) * c[j];
  return v;
}

}  // namespace

double RadialKernel::profile(double r) const {
  if (r >= 1.0) return 0.0;
  const double s = r * r;
  const double b = (1.0 - s);
  return b * b * b * poly_eval(coeffs, s);
}

double RadialKernel::profile_d1(double r) const {
  if (r >= 1.0) return 0.0;
  const double s = r * r;
  const double b = 1.0 - s;
  // d/dr q(r^2) = 2 r q'(s) with q = (1-s)^3 p(s)
  const double qp = -3.0 * b * b * poly_eval(coeffs, s) + b * b * b * poly_deriv(coeffs, s);
  return 2.0 * r * qp;
}

double RadialKernel::profile_d2(double r) const {
  if (r >= 1.0) return 0.0;
  const double s = r * r;
  const double b = 1.0 - s;
  const double p = poly_eval(coeffs, s);
  const double p1 = poly_deriv(coeffs, s);
  const double p2 = poly_deriv2(coeffs, s);
  const double qp = -3.0 * b * b * p + b * b * b * p1;
  const double qpp = 6.0 * b * p - 6.0 * b * b * p1 + b * b * b * p2;
  return 2.0 * qp + 4.0 * s * qpp;
}

double RadialKernel::eval_unit(const double* u) const { return profile(norm2(u, dim)); }

double RadialKernel::eval_scaled(double h, const double* x, const double* z) const {
  require(h > 0.0, errc::precondition, "kernel: bandwidth must be positive");
  const double r = dist2(x, z, dim) / h;
  if (r >= 1.0) return 0.0;
  return profile(r) / std::pow(h, dim);
}

RadialKernel make_kernel(int dim, int order) {
  require(dim >= 1, errc::invalid_argument, "make_kernel: dim must be >= 1");
  require(order >= 0, errc::invalid_argument, "make_kernel: order must be >= 0");

  const int n = 1 + order / 2;  // mass constraint + vanishing even moments
  std::vector<double> A(static_cast<size_t>(n * n), 0.0);
  std::vector<double> rhs(static_cast<size_t>(n), 0.0);
  rhs[0] = 1.0;
  for (int m = 0; m < n; ++m) {
    const double sm = sphere_moment(m, dim);
    for (int j = 0; j < n; ++j)
      A[static_cast<size_t>(m * n + j)] = sm * radial_beta(m + j + 0.5 * dim);
  }
  solve_linear(A, rhs, n);  // reports singular systems

  RadialKernel k;
  k.dim = dim;
  k.order = order;
  k.coeffs = rhs;

  // int |K| via the radial representation, fine 1-D Simpson.
  auto abs_radial = [&k, dim](const double* r) {
    return std::abs(k.profile(r[0])) * std::pow(r[0], dim - 1);
  };
  const double radial = integrate_refined(abs_radial, Box({0.0}, {1.0}), 1e-11, 1e-9, 129).value;
  k.l1 = sphere_moment(0, dim) * radial;
  return k;
}

BandwidthSchedule BandwidthSchedule::theorem_main(int d) {
  require(d >= 1, errc::invalid_argument, "schedule: d must be >= 1");
  BandwidthSchedule s;
  s.variant = Variant::theorem_main;
  s.d = d;
  return s;
}

BandwidthSchedule BandwidthSchedule::corollary_i(double beta, double eta) {
  require(beta > 0.0, errc::invalid_argument, "schedule: beta must be positive");
  const double floor = std::max(1.0 / (2.0 * beta), 0.5);
  require(eta > floor, errc::invalid_argument,
          "schedule: corollary-i requires eta > max(1/(2 beta), 1/2)");
  BandwidthSchedule s;
  s.variant = Variant::corollary_i;
  s.beta = beta;
  s.eta = eta;
  return s;
}

BandwidthSchedule BandwidthSchedule::corollary_ii(double beta) {
  require(beta > 1.0, errc::invalid_argument, "schedule: corollary-ii requires beta > 1");
  BandwidthSchedule s;
  s.variant = Variant::corollary_ii;
  s.beta = beta;
  return s;
}

BandwidthSchedule BandwidthSchedule::parse(const std::string& name, int d, double beta,
                                           double eta) {
  if (name == "theorem-main") return theorem_main(d);
  if (name == "corollary-i") return corollary_i(beta, eta);
  if (name == "corollary-ii") return corollary_ii(beta);
  fail(errc::invalid_argument, "schedule: unknown variant '" + name + "'");
}

double BandwidthSchedule::eval(double t) const {
  require(t >= 3.0, errc::precondition, "schedule: t must be >= 3");
  switch (variant) {
    case Variant::theorem_main:
      return std::pow(t, -1.0 / d) * std::log(std::exp(1.0) * t);
    case Variant::corollary_i:
      return std::pow(t, -eta);
    case Variant::corollary_ii:
      return std::pow(t, -0.5) * std::log(std::exp(1.0) * t);
  }
  fail(errc::internal, "schedule: unreachable");
}

std::string BandwidthSchedule::name() const {
  switch (variant) {
    case Variant::theorem_main: return "theorem-main";
    case Variant::corollary_i: return "corollary-i";
    case Variant::corollary_ii: return "corollary-ii";
  }
  return "?";
}

void check_convolution_clearance(const Box& support, const Box& outer, double h) {
  require(h > 0.0, errc::precondition, "convolve: bandwidth must be positive");
  require(h < support.clearance(outer), errc::precondition,
          "convolve: bandwidth exceeds the clearance between the support box and the domain boundary");
}

double convolve_value(const ScalarField& g, const RadialKernel& k, double h, const double* x,
                      int nodes) {
  const int d = g.dim;
  const double hd = std::pow(h, d);
  const Box ball = Box::cube(d, h);
  std::vector<double> z(static_cast<size_t>(d));
  auto integrand = [&](const double* y) -> double {
    const double r = norm2(y, d) / h;
    if (r >= 1.0) return 0.0;
    for (int i = 0; i < d; ++i) z[static_cast<size_t>(i)] = x[i] - y[i];
    return g.eval(z.data()) * k.profile(r) / hd;
  };
  return simpson_tensor(integrand, ball, nodes);
}

ConvolutionJet convolve_jet(const TestFunction& g, const RadialKernel& k, double h, const double* x,
                            int nodes) {
  const int d = g.dim;
  require(d <= 3, errc::invalid_argument, "convolve_jet: dim must be <= 3");
  const double hd = std::pow(h, d);
  const Box ball = Box::cube(d, h);
  const int n_out = 1 + d + d * d;
  double out[1 + 3 + 9];
  std::vector<double> z(static_cast<size_t>(d));
  auto integrand = [&](const double* y, double* v) {
    const double r = norm2(y, d) / h;
    if (r >= 1.0) {
      for (int i = 0; i < n_out; ++i) v[i] = 0.0;
      return;
    }
    for (int i = 0; i < d; ++i) z[static_cast<size_t>(i)] = x[i] - y[i];
    const double w = k.profile(r) / hd;
    v[0] = g.value(z.data()) * w;
    g.gradient(z.data(), v + 1);
    g.hessian(z.data(), v + 1 + d);
    for (int i = 1; i < n_out; ++i) v[i] *= w;
  };
  simpson_tensor_multi(integrand, n_out, ball, nodes, out);
  ConvolutionJet jet;
  jet.value = out[0];
  for (int i = 0; i < d; ++i) jet.grad[static_cast<size_t>(i)] = out[1 + i];
  for (int i = 0; i < d * d; ++i) jet.hess[static_cast<size_t>(i)] = out[1 + d + i];
  return jet;
}

TestFunction convolved_test_function(const TestFunction& g, const RadialKernel& k, double h,
                                     const Box& outer, int nodes) {
  check_convolution_clearance(g.support, outer, h);
  require(g.dim == k.dim, errc::invalid_argument, "convolve: dimension mismatch");
  const int d = g.dim;
  TestFunction r;
  r.dim = d;
  r.support = g.support.inflated(h);
  r.label = g.label + "*K_h";
  r.envelope_bound = g.envelope_bound * k.l1 * 1.1;
  TestFunction base = g;
  RadialKernel kk = k;
  r.value = [base, kk, h, nodes](const double* x) {
    return convolve_jet(base, kk, h, x, nodes).value;
  };
  r.gradient = [base, kk, h, nodes, d](const double* x, double* out) {
    const auto jet = convolve_jet(base, kk, h, x, nodes);
    for (int i = 0; i < d; ++i) out[i] = jet.grad[static_cast<size_t>(i)];
  };
  r.hessian = [base, kk, h, nodes, d](const double* x, double* out) {
    const auto jet = convolve_jet(base, kk, h, x, nodes);
    for (int i = 0; i < d * d; ++i) out[i] = jet.hess[static_cast<size_t>(i)];
  };
  return r;
}

}  // namespace difflab

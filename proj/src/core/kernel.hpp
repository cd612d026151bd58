#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "test_function.hpp"

namespace difflab {

// Compactly supported C^2 radial kernel of prescribed moment order:
// K(u) = Ktilde(|u|) with Ktilde(r) = (1-r^2)^3 p(r^2) on [0,1], zero outside.
// p solves the linear system {unit mass, vanishing even coordinate moments up
// to `order`}; odd moments vanish by symmetry.
struct RadialKernel {
  int dim = 0;
  int order = 0;
  std::vector<double> coeffs;  // p(s) = sum_j coeffs[j] s^j
  double l1 = 0.0;             // int |K| d lambda

  double profile(double r) const;     // Ktilde(r)
  double profile_d1(double r) const;  // dKtilde/dr
  double profile_d2(double r) const;

  double eval_unit(const double* u) const;  // K(u)
  // K_{h,x}(z) = h^-d Ktilde(|x-z|/h)
  double eval_scaled(double h, const double* x, const double* z) const;
};

RadialKernel make_kernel(int dim, int order);

// Bandwidth schedules h(t) for t >= 3.
struct BandwidthSchedule {
  enum class Variant { theorem_main, corollary_i, corollary_ii };
  Variant variant = Variant::theorem_main;
  int d = 0;
  double beta = 0.0;
  double eta = 0.0;

  static BandwidthSchedule theorem_main(int d);
  static BandwidthSchedule corollary_i(double beta, double eta);
  static BandwidthSchedule corollary_ii(double beta);
  static BandwidthSchedule parse(const std::string& name, int d, double beta, double eta);

  double eval(double t) const;
  std::string name() const;
};

// Plain scalar field with a known compact support box (used for f = Ag).
struct ScalarField {
  int dim = 0;
  Box support;
  std::function<double(const double*)> eval;
};

// (g * K_h)(x) by tensor Simpson over the bounding box of the radius-h ball.
double convolve_value(const ScalarField& g, const RadialKernel& k, double h, const double* x,
                      int nodes = 33);

// Value, gradient and Hessian of g * K_h in one pass, using that derivatives
// of the convolution equal convolved derivatives.
struct ConvolutionJet {
  double value = 0.0;
  std::array<double, 3> grad{};
  std::array<double, 9> hess{};
};
ConvolutionJet convolve_jet(const TestFunction& g, const RadialKernel& k, double h, const double* x,
                            int nodes = 33);

// Convolution as a TestFunction (support inflated by h). `outer` bounds the
// admissible region: h must be smaller than the clearance of g.support in it.
TestFunction convolved_test_function(const TestFunction& g, const RadialKernel& k, double h,
                                     const Box& outer, int nodes = 33);

void check_convolution_clearance(const Box& support, const Box& outer, double h);

}  // namespace difflab

#pragma once

#include <functional>
#include <optional>
#include <string>

#include "geometry.hpp"
#include "rng.hpp"

namespace difflab {

enum class DomainKind { full_space, reflected_interval };

// Ergodic diffusion dX = b(X) dt + sigma dW with invariant density
// pi = exp(log_density)/normalization on the working box. Immutable after
// construction; all evaluation members are reentrant.
struct DiffusionModel {
  int dim = 0;
  DomainKind domain = DomainKind::full_space;
  double sigma = 0.0;  // isotropic diffusion scale, a(x) = sigma^2 I
  std::string kind;

  std::function<void(const double*, double*)> drift;
  std::function<void(const double*, double*)> diffusion_matrix;  // d*d row-major
  std::function<double(const double*)> log_density;              // unnormalized log pi
  double normalization = 0.0;                                    // Z
  Box working_box;
  std::optional<double> spectral_gap;  // 1/c_P when analytically known
  double ellipticity_floor = 0.0;

  // Exact stationary sampler when available (OU); draws with the init stream.
  std::function<void(uint64_t seed, uint64_t replicate, double*)> stationary_sampler;

  double density(const double* x) const { return std::exp(log_density(x)) / normalization; }
  double poincare_constant() const;  // c_P; throws if the gap is unknown
};

// Ornstein-Uhlenbeck: b(x) = -x, stationary law N(0, sigma^2/2 I).
DiffusionModel make_ou_model(int dim, double sigma);

// General Langevin b = -grad V; gradV is cross-checked against V by finite
// differences at construction. The invariant density exp(-2V/sigma^2) must
// put all but ~1e-6 of its mass inside working_box.
DiffusionModel make_langevin_model(const std::function<double(const double*)>& V,
                                   const std::function<void(const double*, double*)>& gradV,
                                   int dim, double sigma, const Box& working_box);

// V(x) = sum_i x_i^4 / 4.
DiffusionModel make_quartic_model(int dim, double sigma, double box_halfwidth = 4.0);

// Reflecting diffusion on [0,1]; pi(x) proportional to
// sigma^-2 exp(int_0^x 2 b(y)/sigma^2 dy).
DiffusionModel make_reflected_model(const std::function<double(double)>& b, double sigma);

}  // namespace difflab

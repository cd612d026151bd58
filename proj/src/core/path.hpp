#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "model.hpp"

namespace difflab {

enum class InitMode { stationary, fixed_point };

// Discretized sample path X_0, X_dt, ..., X_{n dt} with n = floor(t_max/dt).
// Immutable after construction; states are stored flat (length * dim).
struct PathGrid {
  int dim = 0;
  double dt = 0.0;
  double t_max = 0.0;
  uint64_t seed = 0;
  uint64_t replicate = 0;
  InitMode init = InitMode::stationary;
  std::vector<double> states;

  size_t length() const { return states.size() / static_cast<size_t>(dim); }
  size_t steps() const { return length() - 1; }
  double horizon() const { return static_cast<double>(steps()) * dt; }
  const double* state(size_t k) const { return states.data() + k * static_cast<size_t>(dim); }
};

// Euler-Maruyama for full-space Langevin models. Stationary init draws from
// the model's exact sampler when present, otherwise discards a 10-time-unit
// burn-in. Gaussian increments come from the counter stream (seed, replicate, step).
PathGrid simulate_langevin(const DiffusionModel& model, double dt, double t_max, uint64_t seed,
                           InitMode init, const double* x0 = nullptr, uint64_t replicate = 0);

// Euler-Maruyama proposals folded back into [0,1] by repeated reflection.
PathGrid simulate_reflected(const DiffusionModel& model, double dt, double t_max, uint64_t seed,
                            InitMode init, const double* x0 = nullptr, uint64_t replicate = 0);

// Standard planar Brownian motion started at x0.
PathGrid simulate_planar_bm(double dt, double t_max, uint64_t seed, const double* x0,
                            uint64_t replicate = 0);

// Exposed for unit tests: fold a Euler proposal into [0,1].
double reflect_into_unit(double y);

// X = f(B) for the complex exponential f, together with the quadratic
// variation clock F(u) = int_0^u |f'(B_s)|^2 ds (left-endpoint sums).
struct TimeChangeRecord {
  PathGrid base;                 // planar BM
  std::vector<double> clock;     // length() values, clock[0] = 0
  std::vector<double> mapped;    // flat 2-D states of X = f(B)
  std::vector<double> speed;     // |f'(B_k)|^2 per grid point

  size_t length() const { return clock.size(); }
  const double* mapped_state(size_t k) const { return mapped.data() + 2 * k; }
};

TimeChangeRecord time_change_isotropic(const std::string& f_label, const PathGrid& base);

// Binary dump: "DLPATH01" magic, then u64 dim, f64 dt, f64 t_max, u64 seed,
// u64 length, followed by length*dim little-endian doubles.
void write_path(const PathGrid& path, const std::string& filename);
PathGrid read_path(const std::string& filename);

}  // namespace difflab

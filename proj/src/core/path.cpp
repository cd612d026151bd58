#include "path.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

namespace difflab {

namespace {

constexpr double kDivergenceLimit = 1e6;
constexpr double kBurnInTime = 10.0;

size_t step_count(double dt, double t_max) {
  require(dt > 0.0, errc::precondition, "simulate: dt must be positive");
  require(t_max >= dt, errc::precondition, "simulate: t_max must be >= dt");
  return static_cast<size_t>(std::floor(t_max / dt + 1e-9));
}

void check_finite(const double* x, int dim, size_t step) {
  for (int i = 0; i < dim; ++i)
    if (!(std::abs(x[i]) <= kDivergenceLimit))
      fail(errc::numeric, "simulate: path divergence at step " + std::to_string(step));
}

}  // namespace

double reflect_into_unit(double y) {
  int guard = 0;
  while (y < 0.0 || y > 1.0) {
    if (y < 0.0) y = -y;
    if (y > 1.0) y = 2.0 - y;
    require(++guard < 1000, errc::numeric, "simulate: reflection did not terminate");
  }
  return y;
}

PathGrid simulate_langevin(const DiffusionModel& model, double dt, double t_max, uint64_t seed,
                           InitMode init, const double* x0, uint64_t replicate) {
  require(model.domain == DomainKind::full_space, errc::precondition,
          "simulate_langevin: model must be a full-space Langevin model");
  require(dt <= 0.05, errc::precondition, "simulate_langevin: dt must be <= 0.05");
  const int d = model.dim;
  const size_t n = step_count(dt, t_max);

  PathGrid p;
  p.dim = d;
  p.dt = dt;
  p.t_max = t_max;
  p.seed = seed;
  p.replicate = replicate;
  p.init = init;
  p.states.assign((n + 1) * static_cast<size_t>(d), 0.0);

  std::vector<double> x(static_cast<size_t>(d), 0.0);
  size_t burn_steps = 0;
  if (init == InitMode::fixed_point) {
    require(x0 != nullptr, errc::invalid_argument, "simulate_langevin: fixed init needs x0");
    for (int i = 0; i < d; ++i) x[i] = x0[i];
  } else if (model.stationary_sampler) {
    model.stationary_sampler(seed, replicate, x.data());
  } else {
    // no exact sampler: start at the box center and discard a burn-in stretch
    const Point c = model.working_box.center();
    for (int i = 0; i < d; ++i) x[i] = c[i];
    burn_steps = static_cast<size_t>(std::ceil(kBurnInTime / dt));
  }

  const CounterRng rng(seed, make_stream(kStreamSimulation, replicate));
  const double root_dt = std::sqrt(dt);
  std::vector<double> b(static_cast<size_t>(d)), xi(static_cast<size_t>(d));

  size_t rec = 0;
  auto record = [&]() {
    std::memcpy(p.states.data() + rec * static_cast<size_t>(d), x.data(), sizeof(double) * d);
    ++rec;
  };
  if (burn_steps == 0) record();
  for (size_t k = 0; k < burn_steps + n; ++k) {
    model.drift(x.data(), b.data());
    rng.fill_gaussian(k, xi.data(), d);
    for (int i = 0; i < d; ++i) x[i] += b[i] * dt + model.sigma * root_dt * xi[i];
    check_finite(x.data(), d, k);
    if (k + 1 >= burn_steps && rec <= n) record();
  }
  require(rec == n + 1, errc::internal, "simulate_langevin: bookkeeping error");
  return p;
}

PathGrid simulate_reflected(const DiffusionModel& model, double dt, double t_max, uint64_t seed,
                            InitMode init, const double* x0, uint64_t replicate) {
  require(model.domain == DomainKind::reflected_interval, errc::precondition,
          "simulate_reflected: model must be a reflected-interval model");
  require(dt <= 0.05, errc::precondition, "simulate_reflected: dt must be <= 0.05");
  const size_t n = step_count(dt, t_max);

  PathGrid p;
  p.dim = 1;
  p.dt = dt;
  p.t_max = t_max;
  p.seed = seed;
  p.replicate = replicate;
  p.init = init;
  p.states.assign(n + 1, 0.0);

  double x = 0.5;
  size_t burn_steps = 0;
  if (init == InitMode::fixed_point) {
    require(x0 != nullptr, errc::invalid_argument, "simulate_reflected: fixed init needs x0");
    require(*x0 >= 0.0 && *x0 <= 1.0, errc::precondition, "simulate_reflected: x0 outside [0,1]");
    x = *x0;
  } else {
    burn_steps = static_cast<size_t>(std::ceil(kBurnInTime / dt));
  }

  const CounterRng rng(seed, make_stream(kStreamSimulation, replicate));
  const double root_dt = std::sqrt(dt);
  double b;
  size_t rec = 0;
  if (burn_steps == 0) p.states[rec++] = x;
  for (size_t k = 0; k < burn_steps + n; ++k) {
    model.drift(&x, &b);
    const double xi = rng.gaussian(k, 0);
    x = reflect_into_unit(x + b * dt + model.sigma * root_dt * xi);
    if (k + 1 >= burn_steps && rec <= n) p.states[rec++] = x;
  }
  require(rec == n + 1, errc::internal, "simulate_reflected: bookkeeping error");
  return p;
}

PathGrid simulate_planar_bm(double dt, double t_max, uint64_t seed, const double* x0,
                            uint64_t replicate) {
  const size_t n = step_count(dt, t_max);
  PathGrid p;
  p.dim = 2;
  p.dt = dt;
  p.t_max = t_max;
  p.seed = seed;
  p.replicate = replicate;
  p.init = InitMode::fixed_point;
  p.states.assign(2 * (n + 1), 0.0);
  double x = x0 ? x0[0] : 0.0;
  double y = x0 ? x0[1] : 0.0;
  p.states[0] = x;
  p.states[1] = y;
  const CounterRng rng(seed, make_stream(kStreamSimulation, replicate));
  const double root_dt = std::sqrt(dt);
  double z0, z1;
  for (size_t k = 0; k < n; ++k) {
    rng.gaussian_pair(k, 0, &z0, &z1);
    x += root_dt * z0;
    y += root_dt * z1;
    p.states[2 * (k + 1)] = x;
    p.states[2 * (k + 1) + 1] = y;
  }
  return p;
}

TimeChangeRecord time_change_isotropic(const std::string& f_label, const PathGrid& base) {
  require(f_label == "exp", errc::invalid_argument,
          "time_change: only the complex exponential is implemented");
  require(base.dim == 2, errc::precondition, "time_change: base path must be planar");
  const size_t len = base.length();
  TimeChangeRecord rec;
  rec.base = base;
  rec.clock.assign(len, 0.0);
  rec.mapped.assign(2 * len, 0.0);
  rec.speed.assign(len, 0.0);
  for (size_t k = 0; k < len; ++k) {
    const double re = base.states[2 * k];
    const double im = base.states[2 * k + 1];
    require(std::abs(re) <= 300.0, errc::numeric, "time_change: exp overflow (|Re B| > 300)");
    const double mod = std::exp(re);
    rec.mapped[2 * k] = mod * std::cos(im);
    rec.mapped[2 * k + 1] = mod * std::sin(im);
    rec.speed[k] = mod * mod;  // |f'(B)|^2 = e^{2 Re B}
    if (k + 1 < len) rec.clock[k + 1] = rec.clock[k] + rec.speed[k] * base.dt;
  }
  return rec;
}

void write_path(const PathGrid& path, const std::string& filename) {
  std::ofstream out(filename, std::ios::binary | std::ios::trunc);
  require(out.good(), errc::io, "write_path: cannot open '" + filename + "'");
  const char magic[8] = {'D', 'L', 'P', 'A', 'T', 'H', '0', '1'};
  out.write(magic, 8);
  const uint64_t dim = static_cast<uint64_t>(path.dim);
  const uint64_t len = path.length();
  out.write(reinterpret_cast<const char*>(&dim), 8);
  out.write(reinterpret_cast<const char*>(&path.dt), 8);
  out.write(reinterpret_cast<const char*>(&path.t_max), 8);
  out.write(reinterpret_cast<const char*>(&path.seed), 8);
  out.write(reinterpret_cast<const char*>(&len), 8);
  out.write(reinterpret_cast<const char*>(path.states.data()),
            static_cast<std::streamsize>(sizeof(double) * path.states.size()));
  require(out.good(), errc::io, "write_path: write failed for '" + filename + "'");
}

PathGrid read_path(const std::string& filename) {
  std::ifstream in(filename, std::ios::binary);
  require(in.good(), errc::io, "read_path: cannot open '" + filename + "'");
  char magic[8];
  in.read(magic, 8);
  require(in.good() && std::memcmp(magic, "DLPATH01", 8) == 0, errc::io,
          "read_path: bad magic in '" + filename + "'");
  uint64_t dim = 0, len = 0;
  PathGrid p;
  in.read(reinterpret_cast<char*>(&dim), 8);
  in.read(reinterpret_cast<char*>(&p.dt), 8);
  in.read(reinterpret_cast<char*>(&p.t_max), 8);
  in.read(reinterpret_cast<char*>(&p.seed), 8);
  in.read(reinterpret_cast<char*>(&len), 8);
  require(in.good() && dim >= 1 && dim <= 64, errc::io, "read_path: corrupt header");
  p.dim = static_cast<int>(dim);
  p.states.resize(static_cast<size_t>(len) * dim);
  in.read(reinterpret_cast<char*>(p.states.data()),
          static_cast<std::streamsize>(sizeof(double) * p.states.size()));
  require(in.good(), errc::io, "read_path: truncated state data");
  return p;
}

}  // namespace difflab

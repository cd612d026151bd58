#include "model.hpp"

#include <cmath>
#include <memory>

#include "quadrature.hpp"

namespace difflab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void isotropic_matrix(int dim, double sigma2, double* out) {
  for (int i = 0; i < dim * dim; ++i) out[i] = 0.0;
  for (int i = 0; i < dim; ++i) out[i * dim + i] = sigma2;
}

}  // namespace

double DiffusionModel::poincare_constant() const {
  require(spectral_gap.has_value(), errc::precondition,
          "model '" + kind + "' has no analytically known spectral gap");
  return 1.0 / *spectral_gap;
}

DiffusionModel make_ou_model(int dim, double sigma) {
  require(dim >= 1, errc::invalid_argument, "make_ou_model: dim must be >= 1");
  require(sigma > 0.0, errc::invalid_argument, "make_ou_model: sigma must be positive");

  DiffusionModel m;
  m.dim = dim;
  m.sigma = sigma;
  m.kind = "ou";
  m.domain = DomainKind::full_space;
  const double s2 = sigma * sigma;
  m.drift = [dim](const double* x, double* out) {
    for (int i = 0; i < dim; ++i) out[i] = -x[i];
  };
  m.diffusion_matrix = [dim, s2](const double*, double* out) { isotropic_matrix(dim, s2, out); };
  // V(x) = |x|^2/2, log pi = -2V/sigma^2, stationary law N(0, sigma^2/2 I).
  m.log_density = [dim, s2](const double* x) { return -dot(x, x, dim) / s2; };
  m.normalization = std::pow(kPi * s2, 0.5 * dim);  // int exp(-|x|^2/s2) dx
  m.working_box = Box::cube(dim, 6.0 * sigma);
  m.spectral_gap = 1.0;
  m.ellipticity_floor = s2;
  const double sd = sigma / std::sqrt(2.0);
  m.stationary_sampler = [dim, sd](uint64_t seed, uint64_t replicate, double* out) {
    CounterRng rng(seed, make_stream(kStreamInit, replicate));
    rng.fill_gaussian(0, out, dim);
    for (int i = 0; i < dim; ++i) out[i] *= sd;
  };
  return m;
}

DiffusionModel make_langevin_model(const std::function<double(const double*)>& V,
                                   const std::function<void(const double*, double*)>& gradV,
                                   int dim, double sigma, const Box& working_box) {
  require(dim >= 1, errc::invalid_argument, "make_langevin_model: dim must be >= 1");
  require(sigma > 0.0, errc::invalid_argument, "make_langevin_model: sigma must be positive");
  require(working_box.dim() == dim, errc::invalid_argument,
          "make_langevin_model: box dimension mismatch");

  // gradV consistency against central finite differences of V.
  {
    CounterRng rng(0x9e3779b97f4a7c15ull, make_stream(kStreamAux, 7));
    std::vector<double> x(static_cast<size_t>(dim)), g(static_cast<size_t>(dim));
    for (int p = 0; p < 32; ++p) {
      for (int i = 0; i < dim; ++i) {
        const auto u = rng.uniform_pair(static_cast<uint64_t>(p), static_cast<uint64_t>(i));
        x[i] = working_box.lo[i] + 0.1 * working_box.width(i) +
               0.8 * working_box.width(i) * u.second;
      }
      gradV(x.data(), g.data());
      for (int i = 0; i < dim; ++i) {
        const double h = 1e-5 * std::max(1.0, std::abs(x[i]));
        const double keep = x[i];
        x[i] = keep + h;
        const double vp = V(x.data());
        x[i] = keep - h;
        const double vm = V(x.data());
        x[i] = keep;
        const double fd = (vp - vm) / (2.0 * h);
        const double scale = std::max({1.0, std::abs(fd), std::abs(g[i])});
        require(std::abs(fd - g[i]) <= 1e-3 * scale, errc::invalid_argument,
                "make_langevin_model: gradV inconsistent with V");
      }
    }
  }

  const double s2 = sigma * sigma;
  auto logdens = [V, s2](const double* x) { return -2.0 * V(x) / s2; };

  // Normalization over the working box plus a tail check on an enlarged box:
  // if a 1.5x box still picks up mass, the declared box does not capture the
  // invariant law (or exp(-2V/sigma^2) is not integrable).
  auto dens = [logdens](const double* x) { return std::exp(logdens(x)); };
  const QuadResult inner = integrate_refined(dens, working_box, 0.0, 1e-7, 33);
  require(inner.converged && inner.value > 0.0 && std::isfinite(inner.value), errc::invalid_argument,
          "make_langevin_model: normalization quadrature failed to converge");
  Box outer = working_box;
  for (int i = 0; i < dim; ++i) {
    const double c = 0.5 * (outer.lo[i] + outer.hi[i]);
    outer.lo[i] = c + 1.5 * (outer.lo[i] - c);
    outer.hi[i] = c + 1.5 * (outer.hi[i] - c);
  }
  const QuadResult total = integrate_refined(dens, outer, 0.0, 1e-7, 33);
  require(total.converged && std::isfinite(total.value), errc::invalid_argument,
          "make_langevin_model: density quadrature diverges on the enlarged box");
  require(total.value - inner.value <= 1e-6 * total.value, errc::invalid_argument,
          "make_langevin_model: working_box misses invariant mass (non-integrable or box too small)");

  DiffusionModel m;
  m.dim = dim;
  m.sigma = sigma;
  m.kind = "langevin";
  m.domain = DomainKind::full_space;
  m.drift = [gradV, dim](const double* x, double* out) {
    gradV(x, out);
    for (int i = 0; i < dim; ++i) out[i] = -out[i];
  };
  m.diffusion_matrix = [dim, s2](const double*, double* out) { isotropic_matrix(dim, s2, out); };
  m.log_density = logdens;
  m.normalization = inner.value;
  m.working_box = working_box;
  m.ellipticity_floor = s2;
  return m;
}

DiffusionModel make_quartic_model(int dim, double sigma, double box_halfwidth) {
  auto V = [dim](const double* x) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += 0.25 * x[i] * x[i] * x[i] * x[i];
    return s;
  };
  auto gradV = [dim](const double* x, double* out) {
    for (int i = 0; i < dim; ++i) out[i] = x[i] * x[i] * x[i];
  };
  DiffusionModel m = make_langevin_model(V, gradV, dim, sigma, Box::cube(dim, box_halfwidth));
  m.kind = "langevin-quartic";
  return m;
}

DiffusionModel make_reflected_model(const std::function<double(double)>& b, double sigma) {
  require(sigma > 0.0, errc::invalid_argument, "make_reflected_model: sigma must be positive");
  // b must be bounded on [0,1]; probe on a fine grid.
  double bmax = 0.0;
  for (int i = 0; i <= 4096; ++i) {
    const double v = b(static_cast<double>(i) / 4096.0);
    require(std::isfinite(v), errc::invalid_argument, "make_reflected_model: drift not finite on [0,1]");
    bmax = std::max(bmax, std::abs(v));
  }
  require(bmax < 1e6, errc::invalid_argument, "make_reflected_model: drift unbounded on [0,1]");

  const double s2 = sigma * sigma;
  // log pi(x) = log(sigma^-2) + int_0^x 2 b(y)/s2 dy. The drift integral is
  // tabulated once (Simpson prefix on 2^13 cells) and read back through cubic
  // Hermite interpolation with the exact slope F' = b, so the density stays C^1
  // and downstream quadratures keep their convergence order.
  const int n_tab = 8192;
  struct DriftTable {
    std::vector<double> F, slope;
  };
  auto table = std::make_shared<DriftTable>();
  {
    const double h = 1.0 / n_tab;
    table->F.assign(static_cast<size_t>(n_tab + 1), 0.0);
    table->slope.assign(static_cast<size_t>(n_tab + 1), 0.0);
    for (int k = 0; k <= n_tab; ++k) table->slope[static_cast<size_t>(k)] = b(k * h);
    for (int k = 1; k <= n_tab; ++k) {
      const double mid = b((k - 0.5) * h);
      table->F[static_cast<size_t>(k)] =
          table->F[static_cast<size_t>(k - 1)] +
          h / 6.0 * (table->slope[static_cast<size_t>(k - 1)] + 4.0 * mid +
                     table->slope[static_cast<size_t>(k)]);
    }
  }
  auto logdens = [table, n_tab, s2](const double* x) {
    const double u = std::min(1.0, std::max(0.0, x[0])) * n_tab;
    const int k = std::min(n_tab - 1, static_cast<int>(u));
    const double theta = u - k;
    const double h = 1.0 / n_tab;
    const double f0 = table->F[static_cast<size_t>(k)];
    const double f1 = table->F[static_cast<size_t>(k + 1)];
    const double m0 = table->slope[static_cast<size_t>(k)] * h;
    const double m1 = table->slope[static_cast<size_t>(k + 1)] * h;
    const double t2 = theta * theta, t3 = t2 * theta;
    const double F = (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + theta) * m0 +
                     (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * m1;
    return -std::log(s2) + 2.0 * F / s2;
  };

  DiffusionModel m;
  m.dim = 1;
  m.sigma = sigma;
  m.kind = "reflected";
  m.domain = DomainKind::reflected_interval;
  m.drift = [b](const double* x, double* out) { out[0] = b(x[0]); };
  m.diffusion_matrix = [s2](const double*, double* out) { out[0] = s2; };
  m.log_density = logdens;
  m.working_box = Box({0.0}, {1.0});
  const QuadResult z = integrate_refined([logdens](const double* x) { return std::exp(logdens(x)); },
                                         m.working_box, 0.0, 1e-8, 33);
  require(z.converged, errc::numeric, "make_reflected_model: normalization quadrature failed");
  m.normalization = z.value;
  // Reflected Brownian motion on [0,1]: gap = pi^2 sigma^2 / 2 (b == 0 only).
  if (bmax == 0.0) m.spectral_gap = kPi * kPi * s2 / 2.0;
  m.ellipticity_floor = s2;
  return m;
}

}  // namespace difflab

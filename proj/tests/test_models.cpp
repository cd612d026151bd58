#include <doctest.h>

#include "helpers.hpp"

using namespace difflab;

TEST_CASE("ou model closed-form posts") {
  const DiffusionModel m1 = make_ou_model(1, 1.0);
  CHECK(m1.spectral_gap.has_value());
  CHECK(*m1.spectral_gap == 1.0);
  CHECK(m1.normalization == doctest::Approx(std::sqrt(3.14159265358979)).epsilon(1e-12));

  // stationary variance sigma^2/2 by quadrature against the model density
  auto second_moment = [&m1](const double* x) { return x[0] * x[0] * m1.density(x); };
  const double v = integrate_refined(second_moment, m1.working_box, 1e-12, 1e-9).value;
  CHECK(v == doctest::Approx(0.5).epsilon(1e-8));

  const DiffusionModel m2 = make_ou_model(1, 2.0);
  auto second_moment2 = [&m2](const double* x) { return x[0] * x[0] * m2.density(x); };
  const double v2 = integrate_refined(second_moment2, m2.working_box, 1e-12, 1e-9).value;
  CHECK(v2 == doctest::Approx(2.0).epsilon(1e-8));  // sigma^2/2 with sigma = 2

  // b = -x in any dimension
  const DiffusionModel m3 = make_ou_model(2, 1.0);
  double x[2] = {1.0, 1.0}, b[2];
  m3.drift(x, b);
  CHECK(b[0] == -1.0);
  CHECK(b[1] == -1.0);
}

TEST_CASE("ou rejects non-positive sigma") {
  CHECK_THROWS_AS(make_ou_model(1, 0.0), Error);
  CHECK_THROWS_AS(make_ou_model(1, -1.0), Error);
  CHECK_THROWS_AS(make_ou_model(0, 1.0), Error);
}

TEST_CASE("langevin with the ou potential reproduces the ou density") {
  auto V = [](const double* x) { return 0.5 * x[0] * x[0]; };
  auto gradV = [](const double* x, double* out) { out[0] = x[0]; };
  const DiffusionModel lang = make_langevin_model(V, gradV, 1, 1.0, Box::cube(1, 6.0));
  const DiffusionModel ou = make_ou_model(1, 1.0);
  for (double x : {-2.0, -0.5, 0.0, 0.7, 1.9})
    CHECK(lang.density(&x) == doctest::Approx(ou.density(&x)).epsilon(1e-7));
}

TEST_CASE("quartic normalization matches the analytic gamma value") {
  const DiffusionModel m = make_quartic_model(1, 1.0, 4.0);
  const double oracle = std::pow(2.0, 1.25) * std::exp(std::lgamma(1.25));
  CHECK(m.normalization == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("inconsistent gradV is rejected at construction") {
  auto V = [](const double* x) { return 0.5 * x[0] * x[0]; };
  auto badGrad = [](const double* x, double* out) { out[0] = -x[0]; };  // wrong sign
  CHECK_THROWS_AS(make_langevin_model(V, badGrad, 1, 1.0, Box::cube(1, 6.0)), Error);
}

TEST_CASE("non-integrable densities are rejected") {
  // V == 0: exp(-2V) == 1 keeps gaining mass on any enlarged box
  auto V = [](const double*) { return 0.0; };
  auto gradV = [](const double*, double* out) { out[0] = 0.0; };
  CHECK_THROWS_AS(make_langevin_model(V, gradV, 1, 1.0, Box::cube(1, 2.0)), Error);
}

TEST_CASE("invariant density integrates to one for every model") {
  const DiffusionModel models[] = {
      make_ou_model(1, 1.0),
      make_ou_model(2, 1.0),
      make_quartic_model(1, 1.0, 4.0),
      make_reflected_model([](double x) { return -(x - 0.5); }, 1.0),
  };
  for (const auto& m : models) {
    auto dens = [&m](const double* x) { return m.density(x); };
    const double mass = integrate_refined(dens, m.working_box, 1e-12, 1e-9).value;
    CHECK(std::abs(mass - 1.0) <= 1e-4);
  }
}

TEST_CASE("reflected model: zero drift gives the uniform law") {
  const DiffusionModel m = make_reflected_model([](double) { return 0.0; }, 1.0);
  CHECK(m.domain == DomainKind::reflected_interval);
  for (double x : {0.05, 0.3, 0.77, 0.95})
    CHECK(m.density(&x) == doctest::Approx(1.0).epsilon(1e-9));
  // spectral gap of reflected BM on [0,1]
  CHECK(m.spectral_gap.has_value());
  CHECK(*m.spectral_gap == doctest::Approx(9.8696044 / 2.0).epsilon(1e-6));
}

TEST_CASE("reflected model: linear pull matches exp(-(x-1/2)^2) up to normalization") {
  const DiffusionModel m = make_reflected_model([](double x) { return -(x - 0.5); }, 1.0);
  // pi(x) / pi(1/2) should equal exp(-(x-1/2)^2)
  const double half = 0.5;
  const double at_half = m.density(&half);
  for (double x : {0.1, 0.25, 0.6, 0.9}) {
    const double expected = std::exp(-(x - 0.5) * (x - 0.5));
    CHECK(m.density(&x) / at_half == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("reflected model rejects bad inputs") {
  CHECK_THROWS_AS(make_reflected_model([](double) { return 0.0; }, 0.0), Error);
  CHECK_THROWS_AS(make_reflected_model([](double x) { return 1.0 / (x - 0.5); }, 1.0), Error);
}

TEST_CASE("detailed balance: int g Ah dmu == int h Ag dmu") {
  const DiffusionModel model = make_ou_model(1, 1.0);
  const TestFunction g = testutil::ou_catalog(1, "x1");
  const TestFunction h = testutil::ou_catalog(1, "gauss");
  const Box box = Box::bounding(g.support, h.support);
  const double gh = mu_integral(
      model, [&](const double* x) { return g.value(x) * apply_generator(model, h, x); }, box);
  const double hg = mu_integral(
      model, [&](const double* x) { return h.value(x) * apply_generator(model, g, x); }, box);
  CHECK(std::abs(gh - hg) <= 1e-5);
}

TEST_CASE("diffusion matrix is positive definite at sampled points") {
  const DiffusionModel m = make_ou_model(2, 1.5);
  double a[4];
  for (const auto& p : testutil::sample_points(m.working_box, 25, 7u)) {
    m.diffusion_matrix(p.data(), a);
    const auto ev = symmetric_eigenvalues({a[0], a[1], a[2], a[3]}, 2);
    CHECK(ev.front() >= m.ellipticity_floor - 1e-12);
  }
}

#include <doctest.h>

#include "helpers.hpp"

using namespace difflab;

TEST_CASE("simpson is exact on cubics") {
  const Box box({-1.0}, {2.0});
  auto f = [](const double* x) { return 3.0 * x[0] * x[0] * x[0] - x[0] + 2.0; };
  // int_{-1}^{2} = 3/4 x^4 - x^2/2 + 2x |_{-1}^{2} = (12-2+4) - (3/4-1/2-2)
  const double expected = 14.0 - (-1.75);
  CHECK(simpson_tensor(f, box, 5) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("refined quadrature certifies a gaussian integral") {
  const Box box = Box::cube(2, 8.0);
  auto f = [](const double* x) { return std::exp(-x[0] * x[0] - x[1] * x[1]); };
  const QuadResult r = integrate_refined(f, box, 1e-12, 1e-10);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(3.14159265358979).epsilon(1e-9));
}

TEST_CASE("quartic normalization matches the gamma-function value") {
  // int exp(-x^4/2) dx = 2^{5/4} Gamma(5/4), the analytic oracle
  const double oracle = std::pow(2.0, 1.25) * std::exp(std::lgamma(1.25));
  const Box box({-4.0}, {4.0});
  auto f = [](const double* x) { return std::exp(-0.5 * std::pow(x[0], 4)); };
  const QuadResult r = integrate_refined(f, box, 1e-12, 1e-10);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("multi-integrand pass agrees with scalar passes") {
  const Box box = Box::cube(2, 1.5);
  auto f0 = [](const double* x) { return std::cos(x[0]) * std::sin(x[1] + 0.3); };
  auto f1 = [](const double* x) { return x[0] * x[0] + x[1]; };
  double out[2];
  simpson_tensor_multi(
      [&](const double* x, double* v) {
        v[0] = f0(x);
        v[1] = f1(x);
      },
      2, box, 65, out);
  CHECK(out[0] == doctest::Approx(simpson_tensor(f0, box, 65)).epsilon(1e-14));
  CHECK(out[1] == doctest::Approx(simpson_tensor(f1, box, 65)).epsilon(1e-14));
}

TEST_CASE("refinement reports non-convergence at the cap") {
  // |x|^{1/2} has unbounded derivatives at 0; demand an absurd tolerance
  const Box box({-1.0}, {1.0});
  auto f = [](const double* x) { return std::sqrt(std::abs(x[0])); };
  const QuadResult r = integrate_refined(f, box, 1e-15, 0.0, 5, 65);
  CHECK(!r.converged);
}

TEST_CASE("3-d tensor rule integrates a separable product") {
  const Box box = Box::cube(3, 1.0);
  auto f = [](const double* x) { return x[0] * x[0] * x[1] * x[1] * x[2] * x[2]; };
  const double expected = std::pow(2.0 / 3.0, 3);
  CHECK(simpson_tensor(f, box, 33) == doctest::Approx(expected).epsilon(1e-10));
}

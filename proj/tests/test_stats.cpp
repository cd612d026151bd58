#include <doctest.h>

#include "helpers.hpp"

using namespace difflab;

TEST_CASE("normal cdf reference values") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
  CHECK(normal_cdf(-1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-12));
}

TEST_CASE("ks statistics on hand-computed samples") {
  // two points at the quartiles of N(0,1): D = max gap between ecdf and cdf
  std::vector<double> xs = {-0.6744897501960817, 0.6744897501960817};
  CHECK(ks_normal(xs, 0.0, 1.0) == doctest::Approx(0.25).epsilon(1e-12));

  std::vector<double> a = {1.0, 2.0, 3.0};
  std::vector<double> b = {1.5, 2.5, 3.5};
  CHECK(ks_two_sample(a, b) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  std::vector<double> c = {10.0, 11.0};
  CHECK(ks_two_sample(a, c) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("median on odd and even sizes") {
  CHECK(median({3.0, 1.0, 2.0}) == doctest::Approx(2.0));
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == doctest::Approx(2.5));
}

TEST_CASE("linear solver on a known 3x3 system") {
  std::vector<double> A = {2, 1, -1, -3, -1, 2, -2, 1, 2};
  std::vector<double> b = {8, -11, -3};
  solve_linear(A, b, 3);
  CHECK(b[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(b[1] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(b[2] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("singular systems are reported") {
  std::vector<double> A = {1, 2, 2, 4};
  std::vector<double> b = {1, 2};
  CHECK_THROWS_AS(solve_linear(A, b, 2), Error);
}

TEST_CASE("jacobi eigenvalues of a known symmetric matrix") {
  // eigenvalues of [[2,1],[1,2]] are 1 and 3
  const auto ev = symmetric_eigenvalues({2, 1, 1, 2}, 2);
  CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("batch means recovers the limiting variance of an iid stream") {
  // iid N(0,1) values at spacing dt: t^{-1/2} int g dt has variance ~ dt
  CounterRng rng(5, make_stream(kStreamAux, 1));
  const double dt = 0.1;
  const size_t n = 200000;
  std::vector<double> v(n);
  for (size_t k = 0; k < n; ++k) v[k] = rng.gaussian(k, 0);
  // integral over a batch of length b: variance = (dt^2 * b/dt) = b dt, so the
  // normalized limit is dt * Var(g) = 0.1
  const double est = batch_means_variance(v, dt, std::sqrt(n * dt));
  CHECK(est == doctest::Approx(dt).epsilon(0.15));
}

TEST_CASE("variance of variance halves when the sample doubles") {
  CounterRng rng(11, make_stream(kStreamAux, 2));
  std::vector<double> big(40000);
  for (size_t k = 0; k < big.size(); ++k) big[k] = rng.gaussian(k, 0);
  std::vector<double> half(big.begin(), big.begin() + 20000);
  const double r = variance_of_variance(half) / variance_of_variance(big);
  CHECK(r > 1.4);
  CHECK(r < 2.9);
}

TEST_CASE("fit_slope recovers a line") {
  std::vector<double> x = {1, 2, 3, 4};
  std::vector<double> y = {2.0, 3.5, 5.0, 6.5};
  CHECK(fit_slope(x, y) == doctest::Approx(1.5).epsilon(1e-12));
}

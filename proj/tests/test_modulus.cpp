#include <doctest.h>

#include "helpers.hpp"

using namespace difflab;

namespace {

// brute-force all-pairs oracle on the same grid
double modulus_brute(const std::function<double(const double*)>& f, double delta, const Box& box,
                     double step) {
  REQUIRE(box.dim() == 1);
  const int n = static_cast<int>(std::floor(box.width(0) / step + 1e-9)) + 1;
  std::vector<double> xs(static_cast<size_t>(n)), vs(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    xs[static_cast<size_t>(i)] = box.lo[0] + i * step;
    vs[static_cast<size_t>(i)] = f(&xs[static_cast<size_t>(i)]);
  }
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(xs[i] - xs[j]) <= delta * (1.0 + 1e-12))
        m = std::max(m, std::abs(vs[i] - vs[j]));
  return m;
}

}  // namespace

TEST_CASE("identity map has modulus delta on an aligned grid") {
  auto f = [](const double* x) { return x[0]; };
  const Box box({0.0}, {1.0});
  const double m = modulus_of_continuity(f, 0.1, box, 0.025);
  CHECK(m == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("constant functions have zero modulus") {
  auto f = [](const double*) { return 3.7; };
  CHECK(modulus_of_continuity(f, 0.2, Box({0.0}, {1.0}), 0.05) == 0.0);
}

TEST_CASE("sqrt has modulus ~ sqrt(delta) attained at zero") {
  auto f = [](const double* x) { return std::sqrt(std::max(x[0], 0.0)); };
  const Box box({0.0}, {1.0});
  const double m = modulus_of_continuity(f, 0.01, box, 0.0025);
  CHECK(m == doctest::Approx(0.1).epsilon(1e-9));  // sqrt(0.01) at the origin
}

TEST_CASE("windowed implementation agrees with the all-pairs oracle") {
  auto f = [](const double* x) { return std::sin(5.0 * x[0]) + 0.3 * x[0] * x[0]; };
  const Box box({-0.7}, {0.9});
  for (double delta : {0.05, 0.12, 0.31}) {
    const double step = delta / 4.0;
    CHECK(modulus_of_continuity(f, delta, box, step) ==
          doctest::Approx(modulus_brute(f, delta, box, step)).epsilon(1e-13));
  }
}

TEST_CASE("modulus is monotone in delta on a fixed grid") {
  auto f = [](const double* x) { return std::cos(3.0 * x[0]) * x[0]; };
  const Box box({-1.0}, {1.0});
  const double step = 0.01;
  double prev = 0.0;
  for (double delta : {0.04, 0.08, 0.16, 0.32, 0.64}) {
    const double m = modulus_of_continuity(f, delta, box, step);
    CHECK(m >= prev);
    prev = m;
  }
}

TEST_CASE("hoelder class members satisfy the modulus bound") {
  // f(x) = L |x|^beta lies in H_1(beta, L): modulus <= L delta^beta
  const double L = 2.0, beta = 0.6;
  auto f = [=](const double* x) { return L * std::pow(std::abs(x[0]), beta); };
  const Box box({-1.0}, {1.0});
  for (double delta : {0.1, 0.2, 0.4}) {
    const double m = modulus_of_continuity(f, delta, box, delta / 4.0);
    CHECK(m <= L * std::pow(delta, beta) * (1.0 + 1e-9));
    CHECK(m >= 0.8 * L * std::pow(delta, beta));  // attained near the kink
  }
}

TEST_CASE("2-d modulus of a linear functional") {
  auto f = [](const double* x) { return x[0] + x[1]; };
  const Box box = Box::cube(2, 0.5);
  // best grid offset within ||.||_2 <= 0.2 at step 0.05 is (2,3)/(3,2): sum 0.25
  const double m = modulus_of_continuity(f, 0.2, box, 0.05);
  CHECK(m == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(m <= 0.2 * std::sqrt(2.0) + 1e-12);
}

TEST_CASE("preconditions are enforced") {
  auto f = [](const double* x) { return x[0]; };
  const Box box({0.0}, {1.0});
  CHECK_THROWS_AS(modulus_of_continuity(f, 1.5, box, 0.1), Error);    // delta >= 1
  CHECK_THROWS_AS(modulus_of_continuity(f, 0.1, box, 0.05), Error);   // step > delta/4
  CHECK_THROWS_AS(modulus_of_continuity(f, 0.1, Box({0.0}, {0.01}), 0.02), Error);  // empty grid
}

#include <doctest.h>

#include "helpers.hpp"

using namespace difflab;
using testutil::fd_gradient;
using testutil::sample_points;

namespace {

// gradient and hessian against central differences at random interior points
void check_derivatives(const TestFunction& g, int points, double tol) {
  const int d = g.dim;
  const auto pts = sample_points(g.support, points, 20240518u);
  std::vector<double> grad(static_cast<size_t>(d)), fd(static_cast<size_t>(d));
  std::vector<double> hess(static_cast<size_t>(d * d)), fd_row(static_cast<size_t>(d));
  for (const auto& p : pts) {
    g.gradient(p.data(), grad.data());
    fd_gradient(g.value, p.data(), d, 1e-6, fd.data());
    const double scale = std::max(1.0, g.envelope_bound);
    for (int i = 0; i < d; ++i)
      CHECK(std::abs(grad[i] - fd[i]) <= tol * scale);
    g.hessian(p.data(), hess.data());
    for (int i = 0; i < d; ++i) {
      auto grad_i = [&g, i, d](const double* x) {
        std::vector<double> gr(static_cast<size_t>(d));
        g.gradient(x, gr.data());
        return gr[static_cast<size_t>(i)];
      };
      fd_gradient(grad_i, p.data(), d, 1e-6, fd_row.data());
      for (int j = 0; j < d; ++j)
        CHECK(std::abs(hess[i * d + j] - fd_row[j]) <= tol * scale);
    }
  }
}

}  // namespace

TEST_CASE("catalog derivatives match finite differences") {
  for (int dim : {1, 2}) {
    for (const auto& name : catalog_names(dim)) {
      const TestFunction g = testutil::ou_catalog(dim, name);
      CAPTURE(dim);
      CAPTURE(name);
      check_derivatives(g, dim == 1 ? 100 : 40, 2e-5);
    }
  }
}

TEST_CASE("functions vanish outside and on the support boundary shell") {
  const TestFunction g = testutil::ou_catalog(2, "x1x2");
  double grad[2], hess[4];
  // boundary shell: points on the faces and slightly outside
  for (double s : {5.0, 5.01, 6.0}) {
    const double pts[][2] = {{s, 0.3}, {-s, 1.0}, {0.2, s}, {1.0, -s}, {s, s}};
    for (const auto& p : pts) {
      CHECK(g.value(p) == 0.0);
      g.gradient(p, grad);
      g.hessian(p, hess);
      CHECK(grad[0] == 0.0);
      CHECK(grad[1] == 0.0);
      CHECK(hess[0] == 0.0);
      CHECK(hess[3] == 0.0);
    }
  }
}

TEST_CASE("bump is identically one on the inner region") {
  const BoxBump bump(Box::cube(1, 5.0), 0.2);
  // shell width = 0.2 * 10 = 2, flat core [-3, 3]
  const double x1 = 0.0, x2 = 2.99, x3 = -2.99;
  CHECK(bump.value(&x1) == 1.0);
  CHECK(bump.value(&x2) == 1.0);
  CHECK(bump.value(&x3) == 1.0);
  const double x4 = 4.0;
  CHECK(bump.value(&x4) > 0.0);
  CHECK(bump.value(&x4) < 1.0);
}

TEST_CASE("envelope bound dominates sampled values") {
  const TestFunction g = testutil::ou_catalog(1, "x1sq");
  for (const auto& p : sample_points(g.support, 200, 99u))
    CHECK(std::abs(g.value(p.data())) <= g.envelope_bound);
}

TEST_CASE("combinators: difference and product") {
  const TestFunction a = testutil::ou_catalog(1, "x1");
  const TestFunction b = testutil::ou_catalog(1, "x1sq");
  const TestFunction diff = tf_difference(a, b);
  const TestFunction prod = tf_product(a, b);
  const double x = 1.3;
  CHECK(diff.value(&x) == doctest::Approx(a.value(&x) - b.value(&x)).epsilon(1e-14));
  CHECK(prod.value(&x) == doctest::Approx(a.value(&x) * b.value(&x)).epsilon(1e-14));
  check_derivatives(prod, 25, 2e-5);
}

TEST_CASE("hoelder meta validates its parameters") {
  CHECK_THROWS_AS(make_hoelder_meta(0.0, 1.0, "drift"), Error);
  CHECK_THROWS_AS(make_hoelder_meta(0.5, -1.0, "drift"), Error);
  const HoelderMeta m = make_hoelder_meta(0.5, 2.0, "density");
  CHECK(m.beta == 0.5);
  CHECK(m.L == 2.0);
}

TEST_CASE("unknown catalog names are rejected") {
  CHECK_THROWS_AS(testutil::ou_catalog(1, "nope"), Error);
  CHECK_THROWS_AS(testutil::ou_catalog(1, "x1x2"), Error);  // needs dim >= 2
}

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "empirical.hpp"
#include "experiments.hpp"
#include "generator.hpp"
#include "kernel.hpp"
#include "model.hpp"
#include "modulus.hpp"
#include "path.hpp"
#include "quadrature.hpp"
#include "stats.hpp"
#include "test_function.hpp"
#include "verify.hpp"

namespace testutil {

using namespace difflab;

// deterministic point sampler inside a box (test-only)
inline std::vector<Point> sample_points(const Box& box, int count, unsigned rng_seed,
                                        double margin_frac = 0.05) {
  std::mt19937 rng(rng_seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts;
  pts.reserve(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) {
    Point p(static_cast<size_t>(box.dim()));
    for (int i = 0; i < box.dim(); ++i) {
      const double w = box.width(i);
      p[static_cast<size_t>(i)] = box.lo[i] + w * (margin_frac + (1.0 - 2.0 * margin_frac) * u(rng));
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

inline TestFunction ou_catalog(int dim, const std::string& name, double support_half = 5.0) {
  return make_catalog_function(dim, name, Box::cube(dim, support_half), 0.2);
}

// central finite differences of a scalar function
inline void fd_gradient(const std::function<double(const double*)>& f, const double* x, int dim,
                        double h, double* out) {
  std::vector<double> p(x, x + dim);
  for (int i = 0; i < dim; ++i) {
    const double keep = p[static_cast<size_t>(i)];
    p[static_cast<size_t>(i)] = keep + h;
    const double fp = f(p.data());
    p[static_cast<size_t>(i)] = keep - h;
    const double fm = f(p.data());
    p[static_cast<size_t>(i)] = keep;
    out[i] = (fp - fm) / (2.0 * h);
  }
}

}  // namespace testutil

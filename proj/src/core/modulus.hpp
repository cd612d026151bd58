#pragma once

#include <functional>

#include "geometry.hpp"

namespace difflab {

// Discrete modulus of continuity: max of |f(x)-f(y)| over grid points of `box`
// (uniform spacing grid_step) with ||x-y||_2 <= delta. Requires
// 0 < delta < 1 and grid_step <= delta/4 so the grid resolves the scale.
double modulus_of_continuity(const std::function<double(const double*)>& f, double delta,
                             const Box& box, double grid_step);

}  // namespace difflab

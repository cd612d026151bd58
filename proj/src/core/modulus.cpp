#include "modulus.hpp"

#include <cmath>
#include <vector>

#include "errors.hpp"

namespace difflab {

double modulus_of_continuity(const std::function<double(const double*)>& f, double delta,
                             const Box& box, double grid_step) {
  require(delta > 0.0 && delta < 1.0, errc::precondition, "modulus: delta must be in (0,1)");
  require(grid_step > 0.0 && grid_step <= delta / 4.0 + 1e-15, errc::precondition,
          "modulus: grid_step must be <= delta/4");
  const int d = box.dim();
  std::vector<int> count(static_cast<size_t>(d));
  size_t total = 1;
  for (int i = 0; i < d; ++i) {
    count[i] = static_cast<int>(std::floor(box.width(i) / grid_step + 1e-9)) + 1;
    require(count[i] >= 2, errc::precondition, "modulus: grid is empty for this box/step");
    total *= static_cast<size_t>(count[i]);
  }

  // Precompute f on the grid.
  std::vector<double> values(total);
  {
    std::vector<int> idx(static_cast<size_t>(d), 0);
    std::vector<double> p(static_cast<size_t>(d));
    size_t flat = 0;
    while (true) {
      for (int i = 0; i < d; ++i) p[i] = box.lo[i] + idx[i] * grid_step;
      values[flat++] = f(p.data());
      int axis = d - 1;
      while (axis >= 0 && ++idx[axis] == count[axis]) idx[axis--] = 0;
      if (axis < 0) break;
    }
  }

  // Integer offsets within euclidean distance delta (one representative per
  // unordered pair: lexicographically positive offsets only).
  const int reach = static_cast<int>(std::floor(delta / grid_step * (1.0 + 1e-12)));
  const double delta_eff = delta * (1.0 + 1e-12) + 1e-300;
  std::vector<std::vector<int>> offsets;
  {
    std::vector<int> off(static_cast<size_t>(d), -reach);
    while (true) {
      double n2 = 0.0;
      for (int i = 0; i < d; ++i) n2 += static_cast<double>(off[i]) * off[i];
      bool positive = false;
      for (int i = 0; i < d; ++i) {
        if (off[i] > 0) {
          positive = true;
          break;
        }
        if (off[i] < 0) break;
      }
      if (positive && std::sqrt(n2) * grid_step <= delta_eff) offsets.push_back(off);
      int axis = d - 1;
      while (axis >= 0 && ++off[axis] > reach) off[axis--] = -reach;
      if (axis < 0) break;
    }
  }

  std::vector<size_t> strides(static_cast<size_t>(d), 1);
  for (int i = d - 2; i >= 0; --i) strides[i] = strides[i + 1] * static_cast<size_t>(count[i + 1]);

  double mod = 0.0;
  std::vector<int> idx(static_cast<size_t>(d), 0);
  size_t flat = 0;
  while (true) {
    for (const auto& off : offsets) {
      bool ok = true;
      std::ptrdiff_t shift = 0;
      for (int i = 0; i < d; ++i) {
        const int j = idx[i] + off[i];
        if (j < 0 || j >= count[i]) {
          ok = false;
          break;
        }
        shift += static_cast<std::ptrdiff_t>(off[i]) * static_cast<std::ptrdiff_t>(strides[i]);
      }
      if (!ok) continue;
      const double diff = std::abs(values[flat] - values[static_cast<size_t>(
                                       static_cast<std::ptrdiff_t>(flat) + shift)]);
      if (diff > mod) mod = diff;
    }
    int axis = d - 1;
    while (axis >= 0 && ++idx[axis] == count[axis]) idx[axis--] = 0;
    if (axis < 0) break;
    ++flat;
  }
  return mod;
}

}  // namespace difflab

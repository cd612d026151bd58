#include "rng.hpp"

#include <cmath>

namespace difflab {

namespace {

inline uint64_t rotl64(uint64_t x, int r) { return (x << r) | (x >> (64 - r)); }

constexpr uint64_t kParity = 0x1BD11BDAA9FC1A22ull;
constexpr int kRot[8] = {16, 42, 12, 31, 16, 32, 24, 21};

}  // namespace

Counter2 threefry2x64(Counter2 key, Counter2 ctr) {
  const uint64_t ks[3] = {key.x0, key.x1, kParity ^ key.x0 ^ key.x1};
  uint64_t x0 = ctr.x0 + ks[0];
  uint64_t x1 = ctr.x1 + ks[1];
  for (int round = 0; round < 20; ++round) {
    x0 += x1;
    x1 = rotl64(x1, kRot[round & 7]);
    x1 ^= x0;
    if ((round & 3) == 3) {
      const uint64_t s = static_cast<uint64_t>(round >> 2) + 1;  // key injections after rounds 4,8,...
      x0 += ks[s % 3];
      x1 += ks[(s + 1) % 3] + s;
    }
  }
  return Counter2{x0, x1};
}

std::pair<double, double> CounterRng::uniform_pair(uint64_t step, uint64_t idx) const {
  const Counter2 r = raw(step, idx);
  const double u0 = (static_cast<double>(r.x0 >> 11) + 1.0) * 0x1p-53;  // (0,1]
  const double u1 = static_cast<double>(r.x1 >> 11) * 0x1p-53;          // [0,1)
  return {u0, u1};
}

void CounterRng::gaussian_pair(uint64_t step, uint64_t pair_idx, double* z0, double* z1) const {
  const auto [u0, u1] = uniform_pair(step, pair_idx);
  const double rad = std::sqrt(-2.0 * std::log(u0));
  const double ang = 6.283185307179586476925286766559 * u1;
  *z0 = rad * std::cos(ang);
  *z1 = rad * std::sin(ang);
}

void CounterRng::fill_gaussian(uint64_t step, double* out, int n) const {
  double z0, z1;
  for (int i = 0; i + 1 < n; i += 2) {
    gaussian_pair(step, static_cast<uint64_t>(i / 2), &z0, &z1);
    out[i] = z0;
    out[i + 1] = z1;
  }
  if (n & 1) {
    gaussian_pair(step, static_cast<uint64_t>(n / 2), &z0, &z1);
    out[n - 1] = z0;
  }
}

double CounterRng::gaussian(uint64_t step, uint64_t idx) const {
  double z0, z1;
  gaussian_pair(step, idx / 2, &z0, &z1);
  return (idx & 1) ? z1 : z0;
}

}  // namespace difflab

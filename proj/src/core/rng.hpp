#pragma once

#include <cstdint>
#include <utility>

namespace difflab {

// Counter-based generator: every random number is a pure function of
// (seed, stream, step, index), so replicates and steps can be evaluated in
// any order or concurrently and still reproduce bit-identically.
struct Counter2 {
  uint64_t x0 = 0, x1 = 0;
};

// Threefry-2x64, 20 rounds.
Counter2 threefry2x64(Counter2 key, Counter2 ctr);

// Stream ids carve the key space: high byte tags the purpose of the stream,
// low 56 bits carry the replicate index.
enum : uint8_t {
  kStreamSimulation = 1,
  kStreamInit = 2,
  kStreamAux = 3,
};

inline uint64_t make_stream(uint8_t purpose, uint64_t replicate = 0) {
  return (static_cast<uint64_t>(purpose) << 56) | (replicate & 0x00FFFFFFFFFFFFFFull);
}

class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream) : key_{seed, stream} {}

  Counter2 raw(uint64_t step, uint64_t idx) const { return threefry2x64(key_, Counter2{step, idx}); }

  // One uniform in (0,1] and one in [0,1) per raw block.
  std::pair<double, double> uniform_pair(uint64_t step, uint64_t idx) const;

  // Box-Muller pair of independent standard gaussians.
  void gaussian_pair(uint64_t step, uint64_t pair_idx, double* z0, double* z1) const;

  // Fills out[0..n) with standard gaussians for the given step.
  void fill_gaussian(uint64_t step, double* out, int n) const;

  double gaussian(uint64_t step, uint64_t idx) const;

 private:
  Counter2 key_;
};

}  // namespace difflab

#pragma once

#include <cstdint>

#include "tcstab/grid.hpp"

namespace tcstab {

// Counter-based generator: draw n of stream (seed, stream) is
// splitmix64(seed ^ mix(stream) + n), so any draw can be reproduced
// without replaying the ones before it.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();

  CounterRng substream(std::uint64_t id) const;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

// Smooth test profiles sum_j a_j (r - 1) exp(-b_j (r - c_j)^2) with complex
// amplitudes, vanishing at r = 1 and negligible near the outer end of the grid.
struct BumpFamily {
  int terms = 3;
  double width_lo = 0.5, width_hi = 4.0;   // range of b_j
  double center_lo = 1.2, center_hi = 8.0; // range of c_j
  bool complex_amplitudes = true;
};

Field random_bumps(const RadialGrid& g, CounterRng& rng, const BumpFamily& fam = {});

}  // namespace tcstab

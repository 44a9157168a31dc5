#include "tcstab/random.hpp"

#include <cmath>
#include <numbers>

namespace tcstab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(seed) ^ splitmix64(stream * 0xd1b54a32d192ed03ULL + 1)) {}

std::uint64_t CounterRng::next_u64() { return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * counter_++); }

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double CounterRng::normal() {
  double u = uniform();
  while (u <= 0.0) u = uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

CounterRng CounterRng::substream(std::uint64_t id) const {
  CounterRng c(0, 0);
  c.key_ = splitmix64(key_ ^ splitmix64(id + 0x632be59bd9b4e019ULL));
  return c;
}

Field random_bumps(const RadialGrid& g, CounterRng& rng, const BumpFamily& fam) {
  const Eigen::ArrayXd r = g.r().array();
  Field f = Field::Zero(g.size());
  for (int j = 0; j < fam.terms; ++j) {
    const double b = rng.uniform(fam.width_lo, fam.width_hi);
    const double c = rng.uniform(fam.center_lo, fam.center_hi);
    const double re = rng.uniform(-1.0, 1.0);
    const double im = fam.complex_amplitudes ? rng.uniform(-1.0, 1.0) : 0.0;
    const Eigen::ArrayXd prof = (r - 1.0) * (-b * (r - c).square()).exp();
    f.array() += std::complex<double>(re, im) * prof.cast<std::complex<double>>();
  }
  for (auto& v : f)
    if (std::abs(v) < 1e-200) v = 0.0;
  f(0) = 0.0;
  if (g.has_outer_wall()) f(g.size() - 1) = 0.0;
  return f;
}

}  // namespace tcstab

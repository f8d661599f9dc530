// rng.hpp - seedable counter-style generator with independent per-trajectory substreams.
//
// Monte Carlo results must be bit-identical for a given seed regardless of how
// trajectories are distributed over worker threads.  Every trajectory therefore
// owns a generator derived from (seed, trajectory index) alone.
#pragma once

#include <cmath>
#include <cstdint>

namespace corrsense::rng {

// Finalizer of the splitmix64 sequence; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for substream `index` of a run seeded with `seed`.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index + 0x632be59bd9b4e019ULL));
}

struct SplitMix64 {
  std::uint64_t state = 0x853c49e6748fea9bULL;
  bool have_cached = false;
  double cached = 0.0;

  SplitMix64() = default;
  explicit SplitMix64(std::uint64_t s) : state(s) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in the open interval (0,1); never returns 0, so log() is safe.
  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53 + 0x1.0p-54;
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller; the sine partner is cached.
  double normal() {
    if (have_cached) {
      have_cached = false;
      return cached;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached = r * std::sin(a);
    have_cached = true;
    return r * std::cos(a);
  }
};

}  // namespace corrsense::rng

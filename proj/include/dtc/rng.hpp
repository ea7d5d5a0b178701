#pragma once

// The single place where the project's random streams are defined.
//
// Every disorder realization draws from its own std::mt19937_64 engine whose
// seed is SplitMix64-mixed from (master seed, realization index). Uniform
// reals are formed from the top 53 bits of each 64-bit output so the values
// do not depend on the standard library's distribution implementation.

#include <cstdint>
#include <random>

namespace dtc {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream_index)
      : engine_(splitmix64(splitmix64(seed) ^ splitmix64(~stream_index))) {}

  /// Uniform on [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dtc

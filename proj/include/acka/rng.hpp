#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace acka {

/// Deterministic random stream used by every protocol component.
///
/// Stream splitting rule: stream k of a 64-bit master seed is an mt19937_64
/// engine seeded with splitmix64_mix(seed + (k+1) * 0x9E3779B97F4A7C15).
/// The rule is counter-based, so run k can be reproduced in isolation
/// without generating streams 0..k-1.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  static std::uint64_t splitmix64_mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  static RngStream for_run(std::uint64_t seed, std::uint64_t run_index) {
    return RngStream(splitmix64_mix(seed + (run_index + 1) * 0x9E3779B97F4A7C15ULL));
  }

  /// One engine call, 53 uniform bits in [0,1).
  double uniform_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::uint8_t uniform_bit() { return static_cast<std::uint8_t>(engine_() >> 63); }

  /// Unbiased integer in [0, n) by rejection; n == 1 consumes nothing.
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % n;
  }

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[uniform_below(i)]);
    }
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace acka

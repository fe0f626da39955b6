#pragma once

#include <cstdint>

namespace upml {

// Counter-based generator: value i is a pure function of (seed, i), so
// streams can be replayed or split without shared state. The mixer is the
// splitmix64 finalizer.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed ^ (0x5851F42D4C957F2DULL * stream)) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t at(std::uint64_t counter) const {
    return mix(seed_ + 0x9E3779B97F4A7C15ULL * counter);
  }

  std::uint64_t u64() { return at(counter_++); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return double(u64() >> 11) * 0x1p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Uniform integer in [lo, hi] inclusive.
  std::uint64_t uniform_index(std::uint64_t n) { return u64() % n; }

  std::uint64_t counter() const { return counter_; }

  static constexpr const char* name() { return "splitmix64-counter"; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace upml

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace rbcom {

// Counter-based generator: value i of stream `seed` is a pure function of
// (seed, i), so draws are reproducible, order-independent and safe to
// parallelize without shared state.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  // Derive an independent stream, e.g. one per frame.
  CounterRng substream(std::uint64_t tag) const { return CounterRng(mix(seed_ ^ rotate(tag))); }

  std::uint64_t bits(std::uint64_t i) const { return mix(seed_ + (i + 1) * golden); }

  // Uniform on (0, 1], 53-bit resolution (never 0, so logs are safe).
  double uniform(std::uint64_t i) const {
    return static_cast<double>((bits(i) >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform on [lo, hi].
  double uniform(std::uint64_t i, double lo, double hi) const {
    return lo + (hi - lo) * uniform(i);
  }

  // Standard normal via Box-Muller on counters (2i, 2i+1).
  double gaussian(std::uint64_t i) const {
    const double r = std::sqrt(-2.0 * std::log(uniform(2 * i)));
    return r * std::cos(2.0 * std::numbers::pi * uniform(2 * i + 1));
  }

 private:
  static constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ull;

  static std::uint64_t rotate(std::uint64_t x) { return x * 0xD1B54A32D192ED03ull + 1; }

  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
  }

  std::uint64_t seed_;
};

}  // namespace rbcom

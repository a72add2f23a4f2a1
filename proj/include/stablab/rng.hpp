#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace stablab {

/// SplitMix64 output function (Steele, Lea & Flood). Used as the fixed
/// 64-bit mixer for deriving substream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of substream `index` under `master`:
///   mix64(master + 0x9E3779B97F4A7C15 * (index + 1)).
/// A pure function of its arguments, so any worker may derive any stream.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(master + 0x9E3779B97F4A7C15ULL * (index + 1));
}

/// Explicit random state. Wraps std::mt19937_64, whose output sequence is
/// fixed by the standard; the variate transforms below are written out by
/// hand so results do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  /// Uniform on the open interval (lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Unit-mean exponential variate.
  double exponential() { return -std::log(uniform()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace stablab

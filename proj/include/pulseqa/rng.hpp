#pragma once

#include <cmath>
#include <cstdint>

namespace pulseqa {

// SplitMix64 finalizer. Used both as the core generator step and as the
// seed-mixing function that derives disjoint per-instance / per-sampler
// streams from one master seed.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64(index));
}

// Counter-based SplitMix64 stream.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in (0, 1]; never 0 so it is safe under log().
  double next_unit() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  // Uniform double in [lo, hi).
  double next_in(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

private:
  std::uint64_t state_;
};

// Standard normal deviates via the Marsaglia polar transform on a SplitMix64
// stream. Fully specified so a seed reproduces the same instance everywhere
// (no std::normal_distribution, whose sequence is implementation-defined).
class GaussianStream {
public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double v1, v2, s;
    do {
      v1 = 2.0 * rng_.next_unit() - 1.0;
      v2 = 2.0 * rng_.next_unit() - 1.0;
      s = v1 * v1 + v2 * v2;
    } while (s >= 1.0 || s == 0.0);
    const double r = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v2 * r;
    have_cached_ = true;
    return v1 * r;
  }

private:
  SplitMix64 rng_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace pulseqa

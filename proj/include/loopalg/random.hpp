#pragma once

// SplitMix64 with a fixed integer-to-rational mapping, so that every draw is
// reproducible across platforms and standard-library versions.

#include <cstdint>

#include "loopalg/rational.hpp"

namespace loopalg {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  /// Independent stream for sample `index` of a run seeded with `seed`.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mixer(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
    return SplitMix64(mixer.next());
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi] (modulo bias is irrelevant at these ranges).
  long uniform(long lo, long hi) { return lo + long(next() % std::uint64_t(hi - lo + 1)); }

  /// p/q with p in [-9, 9] and q in [1, 4].
  Rational rational() {
    Rational q(uniform(-9, 9), uniform(1, 4));
    q.canonicalize();
    return q;
  }

  /// As rational() but never zero.
  Rational nonzero_rational() {
    long p = uniform(1, 9) * (uniform(0, 1) ? 1 : -1);
    Rational q(p, uniform(1, 4));
    q.canonicalize();
    return q;
  }

 private:
  std::uint64_t state_;
};

}  // namespace loopalg

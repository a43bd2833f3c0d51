#pragma once

#include <cstdint>

#include "xrank/rational.hpp"

namespace xrank {

/// splitmix64: tiny, deterministic across platforms, good enough for drawing
/// generic rational parameters.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, n).
  uint64_t below(uint64_t n) { return next() % n; }
  long range(long lo, long hi) { return lo + long(below(uint64_t(hi - lo + 1))); }

  /// Small random rational: numerator in [-100,100], denominator in [1,10].
  Rat rat() { return Rat(range(-100, 100), range(1, 10)); }
  Rat nonzero_rat() {
    for (;;) {
      Rat r = rat();
      if (!r.is_zero()) return r;
    }
  }

  Rng fork(uint64_t salt) { return Rng(next() ^ (salt * 0x9e3779b97f4a7c15ULL)); }

 private:
  uint64_t state_;
};

}  // namespace xrank

#pragma once

#include <cstdint>
#include <vector>

namespace deob {

// SplitMix64. Small, fast, and — unlike std::shuffle /
// uniform_int_distribution — bit-identical on every platform, which the
// replayable-recipe contract depends on.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) via rejection sampling; bound > 0.
  uint64_t below(uint64_t bound) {
    uint64_t threshold = (0 - bound) % bound;
    while (true) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  int64_t range(int64_t lo, int64_t hi_exclusive) {
    return lo + (int64_t)below((uint64_t)(hi_exclusive - lo));
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; i--) {
      size_t j = (size_t)below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  // Derives an independent stream deterministically.
  Rng fork(uint64_t salt) {
    return Rng(next() ^ (salt * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL));
  }

 private:
  uint64_t state_;
};

}  // namespace deob

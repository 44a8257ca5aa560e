#pragma once

#include <cstdint>

namespace mimwave {

// splitmix64; chosen over std::mt19937_64 + distributions because the
// stream must be identical across platforms and standard libraries.
struct SplitMix64 {
  uint64_t state = 0;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [-1, 1).
  double next_sym() { return 2.0 * next_unit() - 1.0; }

  // Uniform integer in [0, n).
  uint64_t next_below(uint64_t n) { return next() % n; }
};

}  // namespace mimwave

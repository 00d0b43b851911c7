#pragma once

#include <cstdint>

#include "nvk/rational.hpp"

namespace nvk {

// Deterministic, platform-independent generator (splitmix64 core) so that
// seeded runs produce byte-identical artifacts everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
    // Uniform integer in [lo, hi]
    long intIn(long long lo, long long hi) {
        return static_cast<long>(
            lo + static_cast<long long>(
                     below(static_cast<std::uint64_t>(hi - lo + 1))));
    }
    bool chance(double p) {
        return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
    }
    Rat ratIn(long long lo, long long hi) { return Rat(intIn(lo, hi)); }

  private:
    std::uint64_t state_;
};

}  // namespace nvk

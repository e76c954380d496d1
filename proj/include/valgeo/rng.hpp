#pragma once

#include <cstdint>
#include <random>

#include "valgeo/rational.hpp"

namespace valgeo {

/// Deterministic random source. Mapping from raw bits to ranges is done by
/// hand so that a fixed seed reproduces the same stream on any platform
/// (std::uniform_*_distribution is implementation-defined).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t bits() { return gen_(); }

    /// Uniform integer in [lo, hi], inclusive.
    long long uniform_int(long long lo, long long hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long long>(bits() % span);
    }

    /// Uniform double in [a, b).
    double uniform(double a, double b) {
        const double u = static_cast<double>(bits() >> 11) * 0x1.0p-53;
        return a + (b - a) * u;
    }

    /// Random rational k/d with k/d in [lo, hi] and d a power of two <= max_den.
    Rat rational(long long lo, long long hi, long long max_den = 8) {
        long long d = 1;
        const int steps = uniform_int(0, 3);
        for (int i = 0; i < steps && d < max_den; ++i) d *= 2;
        const long long num = uniform_int(lo * d, hi * d);
        return Rat(num, d);
    }

    /// Random nonnegative rational in [0, hi].
    Rat rational_nonneg(long long hi, long long max_den = 8) { return rational(0, hi, max_den); }

    bool coin() { return (bits() & 1u) != 0; }

  private:
    std::mt19937_64 gen_;
};

} // namespace valgeo

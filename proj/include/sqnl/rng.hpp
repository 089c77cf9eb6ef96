#pragma once

#include <cstdint>

namespace sqnl {

// ============================================================================
// splitmix64 — the repo-wide reproducible RNG. Chosen because the whole
// state fits in one word, streams are cheap to derive, and the constants
// are standard enough to reimplement anywhere while chasing a trace.
// ============================================================================

struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 significant bits.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Independent stream for a given element index; order-invariant.
    static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
        return SplitMix64(seed ^ (0x9E3779B97F4A7C15ull * (index + 1)));
    }
};

} // namespace sqnl

#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include "errors.hpp"

namespace sqnl {

// ============================================================================
// Two's-complement words with saturating arithmetic.
//
// Words carry their bit width R; the value is always inside
// [-2^(R-1), 2^(R-1) - 1]. Arithmetic runs on int64 with headroom, so no
// intermediate ever wraps before the explicit saturation step.
// ============================================================================

inline constexpr int kMinWidth = 4;
inline constexpr int kMaxWidth = 24;

constexpr std::int64_t width_min(int r) { return -(std::int64_t{1} << (r - 1)); }
constexpr std::int64_t width_max(int r) { return (std::int64_t{1} << (r - 1)) - 1; }

struct Word {
    std::int64_t value = 0;
    int width = 8;

    Word() = default;
    Word(std::int64_t v, int r) : value(v), width(r) {
        if (r < kMinWidth || r > kMaxWidth)
            throw domain_error("Word: width " + std::to_string(r) + " outside [" +
                               std::to_string(kMinWidth) + ", " + std::to_string(kMaxWidth) + "]");
        if (v < width_min(r) || v > width_max(r))
            throw domain_error("Word: value " + std::to_string(v) + " not representable in " +
                               std::to_string(r) + " bits");
    }

    friend bool operator==(const Word& a, const Word& b) = default;
};

// Saturation bound; lower <= 0 <= upper so 0 is always representable.
struct SatBound {
    std::int64_t lower;
    std::int64_t upper;

    SatBound(std::int64_t lo, std::int64_t hi) : lower(lo), upper(hi) {
        if (lo > 0 || hi < 0)
            throw domain_error("SatBound: bound must straddle zero");
    }

    static SatBound symmetric(std::int64_t y) { return SatBound(-y, y); }
};

// Hard limiter: boundary values map onto the bound itself.
constexpr std::int64_t sat(std::int64_t x, std::int64_t lower, std::int64_t upper) {
    if (x <= lower) return lower;
    if (x >= upper) return upper;
    return x;
}

inline std::int64_t sat(std::int64_t x, const SatBound& b) { return sat(x, b.lower, b.upper); }

inline std::int64_t sat_add(const Word& a, std::int64_t b, const SatBound& bound) {
    return sat(a.value + b, bound);
}

inline std::int64_t sat_sub(std::int64_t a, std::int64_t b, const SatBound& bound) {
    return sat(a - b, bound);
}

// Widening keeps the value; narrowing arithmetic-right-shifts by the width
// difference (truncation toward -inf) and then saturates to the new range.
inline Word resize(const Word& x, int new_width) {
    if (new_width < kMinWidth || new_width > kMaxWidth)
        throw domain_error("resize: width " + std::to_string(new_width) + " out of range");
    if (new_width >= x.width) return Word(x.value, new_width);
    std::int64_t shifted = x.value >> (x.width - new_width);
    return Word(sat(shifted, width_min(new_width), width_max(new_width)), new_width);
}

// floor(sum / n) for power-of-two n, i.e. arithmetic shift semantics.
inline std::int64_t avg_floor(std::int64_t sum, std::int64_t n) {
    if (n <= 0 || !std::has_single_bit(static_cast<std::uint64_t>(n)))
        throw domain_error("avg_floor: divisor " + std::to_string(n) + " is not a power of two");
    int shift = std::countr_zero(static_cast<std::uint64_t>(n));
    return sum >> shift;
}

} // namespace sqnl

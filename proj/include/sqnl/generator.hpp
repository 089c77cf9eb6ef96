#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "fixed_point.hpp"
#include "rational.hpp"

namespace sqnl {

// ============================================================================
// Counter-based iterative activation generator.
//
// f(n) = (1/N) * sum_k sat( sat(n + U(k), adder_bound) - U(k), +-M )
//
// U(k) is a midpoint-anchored arithmetic progression. When N hits its upper
// limit 2^(R-1) the midpoints land on half-units, so sequences are stored
// doubled (2*U(k)) and the whole accumulation runs in that doubled domain;
// the final divide folds the factor of two back in. All intermediates are
// exact: accumulator width is R + log2(N) + 1 bits, held in int64.
// ============================================================================

enum class ModeKind { Symmetric, LogSqnl, Asymmetric, Gated };

struct GeneratorMode {
    ModeKind kind = ModeKind::Symmetric;
    std::int64_t alpha = 0; // asymmetric offset, 0 <= alpha <= M/2

    static GeneratorMode symmetric() { return {ModeKind::Symmetric, 0}; }
    static GeneratorMode log_sqnl() { return {ModeKind::LogSqnl, 0}; }
    static GeneratorMode asymmetric(std::int64_t a) { return {ModeKind::Asymmetric, a}; }
    static GeneratorMode gated() { return {ModeKind::Gated, 0}; }
};

struct GeneratorConfig {
    int r = 8;
    std::int64_t n = 8; // sequence length, power of two in [2, 2^(R-1)]
    GeneratorMode mode{};
    bool endpoint_anchor = false; // experimental; midpoint anchoring is canonical

    GeneratorConfig(int r_, std::int64_t n_, GeneratorMode mode_ = GeneratorMode::symmetric(),
                    bool endpoint = false)
        : r(r_), n(n_), mode(mode_), endpoint_anchor(endpoint) {
        if (r < kMinWidth || r > kMaxWidth)
            throw domain_error("GeneratorConfig: width " + std::to_string(r) + " out of range");
        if (n < 2 || n > m() || !std::has_single_bit(static_cast<std::uint64_t>(n)))
            throw domain_error("GeneratorConfig: N " + std::to_string(n) +
                               " must be a power of two in [2, " + std::to_string(m()) + "]");
        if (mode.kind == ModeKind::Asymmetric) {
            if (mode.alpha < 0 || mode.alpha > m() / 2)
                throw domain_error("GeneratorConfig: alpha " + std::to_string(mode.alpha) +
                                   " outside [0, " + std::to_string(m() / 2) + "]");
        } else if (mode.alpha != 0) {
            throw invariant_error("GeneratorConfig: alpha only meaningful in asymmetric mode");
        }
    }

    std::int64_t u_max() const { return std::int64_t{1} << (r - 2); }
    std::int64_t m() const { return std::int64_t{1} << (r - 1); }
};

// Strictly increasing progression, stored doubled so half-unit midpoints
// (N = 2^(R-1)) stay integral.
struct Sequence {
    std::vector<std::int64_t> doubled;

    std::size_t size() const { return doubled.size(); }
    Rational value(std::size_t k) const { return Rational(doubled.at(k), 2); }
};

inline Sequence make_sequence(const GeneratorConfig& cfg) {
    const std::int64_t u = cfg.u_max();
    // Doubled stride; span is 2*U_MAX in both layouts.
    const std::int64_t s2 = 4 * u / cfg.n;
    std::int64_t start2;
    if (cfg.mode.kind == ModeKind::Asymmetric) {
        start2 = -4 * u + 2 * cfg.mode.alpha; // span {-2*U_MAX, ..., 0} + alpha
    } else {
        start2 = -2 * u; // span {-U_MAX, ..., U_MAX}
    }
    if (!cfg.endpoint_anchor) start2 += s2 / 2;

    Sequence seq;
    seq.doubled.reserve(static_cast<std::size_t>(cfg.n));
    for (std::int64_t k = 0; k < cfg.n; ++k) seq.doubled.push_back(start2 + k * s2);
    return seq;
}

namespace detail {

// Doubled-domain saturation bounds for the first (add) stage.
inline SatBound adder_bound2(const GeneratorConfig& cfg, std::int64_t c_scale) {
    switch (cfg.mode.kind) {
    case ModeKind::Asymmetric: return SatBound(-2 * cfg.u_max(), 2 * cfg.m());
    case ModeKind::Gated: return SatBound(-2 * c_scale, 2 * c_scale);
    default: return SatBound(-2 * cfg.u_max(), 2 * cfg.u_max());
    }
}

inline std::int64_t checked_c_scale(const GeneratorConfig& cfg,
                                    const std::optional<std::int64_t>& c_scale) {
    if (cfg.mode.kind == ModeKind::Gated) {
        if (!c_scale) throw domain_error("eval: gated mode requires a scale C");
        if (*c_scale < 0 || *c_scale > cfg.u_max())
            throw domain_error("eval: C " + std::to_string(*c_scale) + " outside [0, " +
                               std::to_string(cfg.u_max()) + "]");
        return *c_scale;
    }
    if (c_scale) throw domain_error("eval: scale C only valid in gated mode");
    return 0;
}

// Doubled accumulator: 2 * sum_k of the saturated summand.
inline std::int64_t accumulate2(std::int64_t n, const GeneratorConfig& cfg, const Sequence& seq,
                                std::int64_t c_scale) {
    const SatBound add2 = adder_bound2(cfg, c_scale);
    const std::int64_t m2 = 2 * cfg.m();
    std::int64_t acc = 0;
    for (std::int64_t u2 : seq.doubled) {
        std::int64_t t = sat(2 * n + u2, add2);
        acc += sat(t - u2, -m2, m2);
    }
    return acc;
}

} // namespace detail

// Exact pre-rounding output: the rational average, with the affine post-map
// already applied for the log-sigmoid mode.
inline Rational eval_exact(std::int64_t n, const GeneratorConfig& cfg,
                           std::optional<std::int64_t> c_scale = std::nullopt) {
    const std::int64_t c = detail::checked_c_scale(cfg, c_scale);
    const Sequence seq = make_sequence(cfg);
    const std::int64_t acc = detail::accumulate2(n, cfg, seq, c);
    Rational avg(acc, 2 * cfg.n);
    if (cfg.mode.kind == ModeKind::LogSqnl)
        avg = avg / Rational(2) + Rational(std::int64_t{1} << (cfg.r - 3));
    return avg;
}

inline Word eval(const Word& n, const GeneratorConfig& cfg,
                 std::optional<std::int64_t> c_scale = std::nullopt) {
    if (n.width != cfg.r)
        throw domain_error("eval: word width " + std::to_string(n.width) +
                           " does not match configured width " + std::to_string(cfg.r));
    const std::int64_t c = detail::checked_c_scale(cfg, c_scale);
    const Sequence seq = make_sequence(cfg);
    const std::int64_t acc = detail::accumulate2(n.value, cfg, seq, c);
    std::int64_t f = avg_floor(acc, 2 * cfg.n);
    if (cfg.mode.kind == ModeKind::LogSqnl) f = (f >> 1) + (std::int64_t{1} << (cfg.r - 3));
    return Word(f, cfg.r);
}

// One output point plus its exact pre-rounding value; f == floor(exact).
struct MapEntry {
    std::int64_t n;
    std::int64_t f;
    Rational exact;
};

struct MappingTable {
    int r = 8;
    std::int64_t cycles_per_activation = 0; // N clock ticks per lookup in hardware
    std::vector<MapEntry> entries;
};

inline MappingTable map_all(const GeneratorConfig& cfg,
                            std::optional<std::int64_t> c_scale = std::nullopt) {
    const std::int64_t c = detail::checked_c_scale(cfg, c_scale);
    const Sequence seq = make_sequence(cfg);
    MappingTable table;
    table.r = cfg.r;
    table.cycles_per_activation = cfg.n;
    table.entries.reserve(static_cast<std::size_t>(2 * cfg.m()));
    const std::int64_t offset = std::int64_t{1} << (cfg.r - 3);
    for (std::int64_t n = -cfg.m(); n < cfg.m(); ++n) {
        const std::int64_t acc = detail::accumulate2(n, cfg, seq, c);
        std::int64_t f = avg_floor(acc, 2 * cfg.n);
        Rational exact(acc, 2 * cfg.n);
        if (cfg.mode.kind == ModeKind::LogSqnl) {
            f = (f >> 1) + offset;
            exact = exact / Rational(2) + Rational(offset);
        }
        table.entries.push_back(MapEntry{n, f, exact});
    }
    return table;
}

} // namespace sqnl

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "errors.hpp"
#include "fixed_point.hpp"
#include "rational.hpp"

namespace sqnl {

// ============================================================================
// Exact piecewise-quadratic oracles.
//
// These are the analytic equivalents of the iterative generator, kept in
// rational arithmetic end to end. Rounding to a word is the caller's job
// (floor, to match the generator's accumulate-then-shift).
// ============================================================================

// Scaling parameters for the gated transfer curve. delta + c == u_max always.
struct GatedParams {
    std::int64_t u_max; // one quarter of the input span, 2^(R-2)
    std::int64_t c;     // gate level, 0 <= c <= u_max
    std::int64_t delta; // u_max - c

    GatedParams(int r, std::int64_t c_scale) {
        if (r < kMinWidth || r > kMaxWidth)
            throw domain_error("GatedParams: width " + std::to_string(r) + " out of range");
        u_max = std::int64_t{1} << (r - 2);
        if (c_scale < 0 || c_scale > u_max)
            throw domain_error("GatedParams: c " + std::to_string(c_scale) + " outside [0, " +
                               std::to_string(u_max) + "]");
        c = c_scale;
        delta = u_max - c;
    }
};

// Symmetric curve. With M = 2^(R-1):
//   n < -M        -> -M/2
//   -M <= n < 0   -> n + n^2/(2M)
//   0 <= n <= M   -> n - n^2/(2M)
//   n > M         -> M/2
inline Rational sqnl_exact(std::int64_t n, int r) {
    if (r < kMinWidth || r > kMaxWidth)
        throw domain_error("sqnl_exact: width " + std::to_string(r) + " out of range");
    const std::int64_t m = std::int64_t{1} << (r - 1);
    if (n < -m) return Rational(-m, 2);
    if (n > m) return Rational(m, 2);
    if (n < 0) return Rational(n) + Rational(n * n, 2 * m);
    return Rational(n) - Rational(n * n, 2 * m);
}

// One-sided curve with offset alpha in [0, M/2]:
//   n < -M/2 - alpha              -> -alpha
//   -M/2 - alpha <= n <= M/2 - alpha -> (M/2 + n + alpha)^2/(2M) - alpha
//   n > M/2 - alpha               -> n
inline Rational asym_exact(std::int64_t n, int r, std::int64_t alpha) {
    if (r < kMinWidth || r > kMaxWidth)
        throw domain_error("asym_exact: width " + std::to_string(r) + " out of range");
    const std::int64_t m = std::int64_t{1} << (r - 1);
    if (alpha < 0 || alpha > m / 2)
        throw domain_error("asym_exact: alpha " + std::to_string(alpha) + " outside [0, " +
                           std::to_string(m / 2) + "]");
    if (n < -m / 2 - alpha) return Rational(-alpha);
    if (n > m / 2 - alpha) return Rational(n);
    const std::int64_t t = m / 2 + n + alpha;
    return Rational(t * t, 2 * m) - Rational(alpha);
}

// Gated curve. Five branches; both knees are exactly continuous:
//   n < -(u_max + c)            -> -c
//   -(u_max + c) <= n < -delta  -> n + (n - delta)^2/(4 u_max)
//   |n| <= delta                -> n c / u_max
//   delta < n <= u_max + c      -> n - (n + delta)^2/(4 u_max)
//   n > u_max + c               -> c
inline Rational gated_exact(std::int64_t n, const GatedParams& p) {
    const std::int64_t u = p.u_max;
    if (n < -(u + p.c)) return Rational(-p.c);
    if (n > u + p.c) return Rational(p.c);
    if (n < -p.delta) {
        const std::int64_t t = n - p.delta;
        return Rational(n) + Rational(t * t, 4 * u);
    }
    if (n > p.delta) {
        const std::int64_t t = n + p.delta;
        return Rational(n) - Rational(t * t, 4 * u);
    }
    return Rational(n * p.c, u);
}

// Deviation of the gated curve from an ideally scaled full-swing curve:
//   (c/u_max) * gated(n, c=u_max) - gated(n, c).
// Zero at c=0, c=u_max, and n=0; elsewhere the scaling is only approximate.
inline Rational gated_error_exact(std::int64_t n, const GatedParams& p) {
    const int r = std::countr_zero(static_cast<std::uint64_t>(p.u_max)) + 2;
    const GatedParams full(r, p.u_max);
    return Rational(p.c, p.u_max) * gated_exact(n, full) - gated_exact(n, p);
}

// Smooth reference model: f(x) = 2/(1 + exp(a x + b x^3)) - 1.
// (a, b) = (-2, 0) gives tanh(x) exactly.
inline double tansig_model(double x, double a, double b) {
    return 2.0 / (1.0 + std::exp(a * x + b * x * x * x)) - 1.0;
}

// Affine post-map of the symmetric curve into [0, 2^(R-2)]: f/2 + 2^(R-3).
inline Rational logsig_exact(std::int64_t n, int r) {
    return sqnl_exact(n, r) / Rational(2) + Rational(std::int64_t{1} << (r - 3));
}

} // namespace sqnl

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"

namespace sqnl {

// ============================================================================
// Real-valued activation family: piecewise quadratics with cheap analytic
// derivatives. Every kind is continuous at its knees; derivatives use the
// right-hand branch at a knee so gradient code is deterministic. Note
// SqSoftmax is a scalar map (a softplus-shaped rectifier), not a normalized
// vector softmax, its name notwithstanding.
// ============================================================================

enum class ActivationKind { Sqnl, SqLogSig, Sqlu, SqSoftmax, SqSqish, SqReu };

inline const char* activation_name(ActivationKind k) {
    switch (k) {
    case ActivationKind::Sqnl: return "sqnl";
    case ActivationKind::SqLogSig: return "sq_logsig";
    case ActivationKind::Sqlu: return "sqlu";
    case ActivationKind::SqSoftmax: return "sq_softmax";
    case ActivationKind::SqSqish: return "sq_sqish";
    case ActivationKind::SqReu: return "sq_reu";
    }
    throw invariant_error("activation_name: unhandled kind");
}

namespace detail {
inline void check_finite(double x) {
    if (!std::isfinite(x)) throw domain_error("activation: non-finite input");
}
} // namespace detail

inline double activate(ActivationKind kind, double x) {
    detail::check_finite(x);
    switch (kind) {
    case ActivationKind::Sqnl:
        if (x >= 2.0) return 1.0;
        if (x >= 0.0) return x - x * x / 4.0;
        if (x >= -2.0) return x + x * x / 4.0;
        return -1.0;
    case ActivationKind::SqLogSig:
        return activate(ActivationKind::Sqnl, x) / 2.0 + 0.5;
    case ActivationKind::Sqlu:
        if (x >= 0.0) return x;
        if (x >= -2.0) return x + x * x / 4.0;
        return -1.0;
    case ActivationKind::SqSoftmax:
        if (x >= 0.5) return x;
        if (x >= -0.5) return (x + 0.5) * (x + 0.5) / 2.0;
        return 0.0;
    case ActivationKind::SqSqish:
        if (x >= 0.0) return x + x * x / 32.0;
        if (x >= -2.0) return x + x * x / 2.0;
        return 0.0;
    case ActivationKind::SqReu:
        if (x >= 0.0) return x;
        if (x >= -2.0) return x + x * x / 2.0;
        return 0.0;
    }
    throw invariant_error("activate: unhandled kind");
}

// Branch derivatives; the >= chain picks the right-hand branch at each knee.
inline double derivative(ActivationKind kind, double x) {
    detail::check_finite(x);
    switch (kind) {
    case ActivationKind::Sqnl:
        if (x >= 2.0) return 0.0;
        if (x >= 0.0) return 1.0 - x / 2.0;
        if (x >= -2.0) return 1.0 + x / 2.0;
        return 0.0;
    case ActivationKind::SqLogSig:
        return derivative(ActivationKind::Sqnl, x) / 2.0;
    case ActivationKind::Sqlu:
        if (x >= 0.0) return 1.0;
        if (x >= -2.0) return 1.0 + x / 2.0;
        return 0.0;
    case ActivationKind::SqSoftmax:
        if (x >= 0.5) return 1.0;
        if (x >= -0.5) return x + 0.5;
        return 0.0;
    case ActivationKind::SqSqish:
        if (x >= 0.0) return 1.0 + x / 16.0;
        if (x >= -2.0) return 1.0 + x;
        return 0.0;
    case ActivationKind::SqReu:
        if (x >= 0.0) return 1.0;
        if (x >= -2.0) return 1.0 + x; // the true branch slope: -1 at the left knee
        return 0.0;
    }
    throw invariant_error("derivative: unhandled kind");
}

inline std::vector<double> activate_batch(ActivationKind kind, const std::vector<double>& xs) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(activate(kind, x));
    return out;
}

// Knee abscissae per kind, for continuity sweeps.
inline std::vector<double> knees(ActivationKind kind) {
    switch (kind) {
    case ActivationKind::Sqnl:
    case ActivationKind::SqLogSig: return {-2.0, 0.0, 2.0};
    case ActivationKind::SqSoftmax: return {-0.5, 0.5};
    case ActivationKind::Sqlu:
    case ActivationKind::SqSqish:
    case ActivationKind::SqReu: return {-2.0, 0.0};
    }
    throw invariant_error("knees: unhandled kind");
}

} // namespace sqnl

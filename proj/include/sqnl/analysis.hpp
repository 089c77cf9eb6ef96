#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "closed_form.hpp"
#include "errors.hpp"
#include "generator.hpp"
#include "rational.hpp"

namespace sqnl {

// ============================================================================
// Deviation profiles, histograms, segment counting, and the gated error
// surface. Everything here works on exact rationals; floating point appears
// only in convenience accessors.
// ============================================================================

struct DeviationEntry {
    std::int64_t n;
    Rational exact_dev;   // pre-rounding: iterative average minus analytic value
    std::int64_t lsb_dev; // post-rounding: |eval - floor(analytic)|
};

struct DeviationProfile {
    int r = 8;
    std::int64_t n_len = 0;
    std::vector<DeviationEntry> entries; // one per input, full domain

    Rational max_abs_exact() const {
        Rational best(0);
        for (const auto& e : entries)
            if (e.exact_dev.abs() > best) best = e.exact_dev.abs();
        return best;
    }

    std::int64_t max_lsb() const {
        std::int64_t best = 0;
        for (const auto& e : entries)
            if (e.lsb_dev > best) best = e.lsb_dev;
        return best;
    }

    // Fraction of inputs whose pre-rounding deviation stays under half a
    // unit — the ones that cannot disturb the rounded output ("zero-bit").
    double zero_fraction() const {
        if (entries.empty()) return 0.0;
        const Rational half(1, 2);
        std::size_t hits = 0;
        for (const auto& e : entries)
            if (e.exact_dev.abs() < half) ++hits;
        return static_cast<double>(hits) / static_cast<double>(entries.size());
    }
};

inline DeviationProfile deviation_profile(const GeneratorConfig& cfg) {
    if (cfg.mode.kind != ModeKind::Symmetric)
        throw domain_error("deviation_profile: only defined for the symmetric mode");
    DeviationProfile prof;
    prof.r = cfg.r;
    prof.n_len = cfg.n;
    prof.entries.reserve(static_cast<std::size_t>(2 * cfg.m()));
    for (std::int64_t n = -cfg.m(); n < cfg.m(); ++n) {
        const Rational ideal = sqnl_exact(n, cfg.r);
        const Rational avg = eval_exact(n, cfg);
        const std::int64_t rounded = eval(Word(n, cfg.r), cfg).value;
        prof.entries.push_back(
            DeviationEntry{n, avg - ideal, std::llabs(rounded - ideal.floor())});
    }
    return prof;
}

struct Histogram {
    std::vector<Rational> edges;      // bins + 1 monotone edges
    std::vector<std::int64_t> counts; // one per bin; sums to the domain size
};

// Bins the pre-rounding deviations over [lo, hi]; out-of-span values are
// folded into the boundary bins so the counts always total 2^R.
inline Histogram deviation_histogram(const DeviationProfile& prof, int bins,
                                     Rational lo = Rational(-1), Rational hi = Rational(1)) {
    if (bins < 1) throw domain_error("deviation_histogram: need at least one bin");
    if (!(lo < hi)) throw domain_error("deviation_histogram: empty span");
    Histogram h;
    h.edges.reserve(static_cast<std::size_t>(bins) + 1);
    const Rational width = (hi - lo) / Rational(bins);
    for (int i = 0; i <= bins; ++i) h.edges.push_back(lo + Rational(i) * width);
    h.counts.assign(static_cast<std::size_t>(bins), 0);
    for (const auto& e : prof.entries) {
        int idx = 0;
        while (idx + 1 < bins && !(e.exact_dev < h.edges[static_cast<std::size_t>(idx) + 1]))
            ++idx;
        ++h.counts[static_cast<std::size_t>(idx)];
    }
    return h;
}

// Number of maximal runs of constant first-difference in the exact mapping.
// When both outer runs are flat saturation tails they are two halves of the
// same even tile, so they count once; a single-sided flat tail stands alone.
inline int count_segments(const MappingTable& table) {
    const auto& e = table.entries;
    if (e.size() < 2) return static_cast<int>(e.size());
    std::vector<Rational> diffs;
    diffs.reserve(e.size() - 1);
    for (std::size_t i = 0; i + 1 < e.size(); ++i) diffs.push_back(e[i + 1].exact - e[i].exact);
    int runs = 1;
    for (std::size_t i = 1; i < diffs.size(); ++i)
        if (diffs[i] != diffs[i - 1]) ++runs;
    const Rational zero(0);
    if (runs >= 2 && diffs.front() == zero && diffs.back() == zero) --runs;
    return runs;
}

struct GatedErrorRow {
    std::int64_t c = 0;
    std::vector<Rational> errors; // per n over the full domain
    Rational max_abs;             // largest |error| in the row
    std::int64_t argmax_n = 0;    // smallest non-negative n attaining it
};

inline std::vector<GatedErrorRow> gated_error_surface(int r,
                                                      const std::vector<std::int64_t>& c_values) {
    std::vector<GatedErrorRow> rows;
    rows.reserve(c_values.size());
    const std::int64_t m = std::int64_t{1} << (r - 1);
    for (std::int64_t c : c_values) {
        const GatedParams params(r, c);
        GatedErrorRow row;
        row.c = c;
        row.errors.reserve(static_cast<std::size_t>(2 * m));
        row.max_abs = Rational(0);
        for (std::int64_t n = -m; n < m; ++n) {
            Rational err = gated_error_exact(n, params);
            if (err.abs() > row.max_abs) row.max_abs = err.abs();
            row.errors.push_back(std::move(err));
        }
        bool found = false;
        for (std::int64_t n = -m; n < m; ++n) {
            if (n < 0) continue;
            if (row.errors[static_cast<std::size_t>(n + m)].abs() == row.max_abs) {
                row.argmax_n = n;
                found = true;
                break;
            }
        }
        if (!found) {
            for (std::int64_t n = -m; n < m; ++n)
                if (row.errors[static_cast<std::size_t>(n + m)].abs() == row.max_abs) {
                    row.argmax_n = n;
                    break;
                }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace sqnl

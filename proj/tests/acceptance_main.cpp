// ============================================================================
// Acceptance harness: ten go/no-go checks over the whole toolkit, one
// PASS/FAIL line each. Exits with the number of failed checks so CI can
// gate on it directly. Runs standalone (no test framework) and prints a
// short evidence string per criterion.
// ============================================================================

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <sqnl/analysis.hpp>
#include <sqnl/closed_form.hpp>
#include <sqnl/dither.hpp>
#include <sqnl/errors.hpp>
#include <sqnl/float_family.hpp>
#include <sqnl/generator.hpp>
#include <sqnl/goldens.hpp>
#include <sqnl/nn.hpp>
#include <sqnl/resources.hpp>
#include <sqnl/rng.hpp>

using namespace sqnl;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int idx, const char* name, bool ok, double secs, const std::string& evidence) {
    std::printf("[%s] %2d %-34s %6.2fs  %s\n", ok ? "PASS" : "FAIL", idx, name, secs,
                evidence.c_str());
    if (!ok) ++g_failures;
}

// --------------------------------------------------------------------------
// 1. The iterative generator never strays more than one LSB from the
//    rounded analytic curve at full sequence length.
// --------------------------------------------------------------------------
void check_oracle_equivalence() {
    Timer t;
    const GeneratorConfig cfg(8, 128);
    std::int64_t worst = 0;
    for (std::int64_t n = -128; n < 128; ++n) {
        const std::int64_t got = eval(Word(n, 8), cfg).value;
        const std::int64_t want = sqnl_exact(n, 8).floor();
        worst = std::max<std::int64_t>(worst, std::llabs(got - want));
    }
    const double secs = t.seconds();
    report(1, "oracle equivalence R=8 N=128", worst <= 1 && secs < 1.0, secs,
           "max |eval - floor(exact)| = " + std::to_string(worst) + " LSB");
}

// --------------------------------------------------------------------------
// 2. Short sequences stay tightly bounded: N=8 deviations within a quarter
//    LSB pre-rounding, and N=4 keeps more than 70% of the range exact.
// --------------------------------------------------------------------------
void check_deviation_bounds() {
    Timer t;
    const DeviationProfile p8 = deviation_profile(GeneratorConfig(8, 8));
    const DeviationProfile p4 = deviation_profile(GeneratorConfig(8, 4));
    const bool ok = p8.max_abs_exact() <= Rational(1, 4) && p4.zero_fraction() > 0.70;
    char buf[96];
    std::snprintf(buf, sizeof buf, "N=8 max dev = %s, N=4 zero fraction = %.5f",
                  p8.max_abs_exact().to_string().c_str(), p4.zero_fraction());
    report(2, "deviation bounds N=8 and N=4", ok, t.seconds(), buf);
}

// --------------------------------------------------------------------------
// 3. The R=8 N=8 mapping decomposes into exactly 16 linear segments.
// --------------------------------------------------------------------------
void check_segments() {
    Timer t;
    const int segs = count_segments(map_all(GeneratorConfig(8, 8)));
    report(3, "segment count R=8 N=8", segs == 16, t.seconds(),
           "segments = " + std::to_string(segs));
}

// --------------------------------------------------------------------------
// 4. Gated landmark values, exact in rational arithmetic.
// --------------------------------------------------------------------------
void check_gated_landmarks() {
    Timer t;
    const Rational full = gated_exact(40, GatedParams(8, 64));
    const Rational mid = gated_exact(40, GatedParams(8, 40));
    const Rational err = gated_error_exact(40, GatedParams(8, 40));
    const double e = err.to_double();
    const bool ok = full == Rational(135, 4) && mid == Rational(24) && std::abs(e + 2.91) <= 0.005;
    report(4, "gated landmark values", ok, t.seconds(),
           "G(40)=" + full.to_string() + " f(40,40)=" + mid.to_string() +
               " E(40,40)=" + err.to_string());
}

// --------------------------------------------------------------------------
// 5. Every published per-block gate count reproduces from the cost model.
// --------------------------------------------------------------------------
void check_gate_table() {
    Timer t;
    const struct {
        BlockKind kind;
        int width;
        std::int64_t gates;
    } rows[] = {
        {BlockKind::Register, 1, 4},        {BlockKind::FullAdder, 1, 9},
        {BlockKind::Adder, 8, 72},          {BlockKind::Adder, 9, 81},
        {BlockKind::TwosComplement, 8, 80}, {BlockKind::TwosComplement, 9, 90},
        {BlockKind::Mux2, 1, 3},            {BlockKind::LutOneSided, 8, 2667},
        {BlockKind::LutOneSided, 12, 67551}, {BlockKind::LutTwoSided, 8, 6120},
        {BlockKind::LutTwoSided, 12, 147420}, {BlockKind::BoothMultiplier, 8, 754},
        {BlockKind::BoothMultiplier, 12, 1124},
    };
    int bad = 0;
    for (const auto& row : rows)
        if (gate_cost(Block(row.kind, row.width)) != row.gates) ++bad;
    report(5, "gate cost table", bad == 0, t.seconds(),
           std::to_string(std::size(rows) - static_cast<std::size_t>(bad)) + "/" +
               std::to_string(std::size(rows)) + " rows exact");
}

// --------------------------------------------------------------------------
// 6. The dither reference fits the smooth model inside the published band
//    for five consecutive seeds.
// --------------------------------------------------------------------------
void check_dither_fit() {
    Timer t;
    std::vector<double> xs;
    for (int i = 0; i < 201; ++i) xs.push_back(-1.5 + 3.0 * i / 200.0);
    bool ok = true;
    std::string evidence;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto ys = simulate(xs, DitherConfig::calibrated(seed));
        const FitResult fit = fit_tansig(xs, ys);
        const bool in_band = fit.converged && fit.a >= -2.0 && fit.a <= -1.6 && fit.b >= 0.0 &&
                             fit.b <= 0.35 && fit.rmse <= 0.05;
        ok = ok && in_band;
        if (seed == 1) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "seed1: a=%.4f b=%.4f rmse=%.4f", fit.a, fit.b,
                          fit.rmse);
            evidence = buf;
        }
    }
    const double secs = t.seconds();
    report(6, "dither fit band, 5 seeds", ok && secs < 10.0, secs, evidence);
}

// --------------------------------------------------------------------------
// 7. Float family: knees are exactly continuous and analytic derivatives
//    match central differences at random off-knee points.
// --------------------------------------------------------------------------
void check_float_family() {
    Timer t;
    const std::vector<ActivationKind> kinds = {
        ActivationKind::Sqnl,      ActivationKind::SqLogSig, ActivationKind::Sqlu,
        ActivationKind::SqSoftmax, ActivationKind::SqSqish,  ActivationKind::SqReu,
    };
    bool ok = true;

    // Exact knee continuity: both adjacent branch formulas agree bitwise.
    const auto branch_pair = [](ActivationKind kind, double k) -> std::pair<double, double> {
        switch (kind) {
        case ActivationKind::Sqnl:
            if (k == -2.0) return {-1.0, k + k * k / 4.0};
            if (k == 0.0) return {k + k * k / 4.0, k - k * k / 4.0};
            return {k - k * k / 4.0, 1.0};
        case ActivationKind::SqLogSig: {
            if (k == -2.0) return {0.0, (k + k * k / 4.0) / 2.0 + 0.5};
            if (k == 0.0) return {(k + k * k / 4.0) / 2.0 + 0.5, (k - k * k / 4.0) / 2.0 + 0.5};
            return {(k - k * k / 4.0) / 2.0 + 0.5, 1.0};
        }
        case ActivationKind::Sqlu:
            if (k == -2.0) return {-1.0, k + k * k / 4.0};
            return {k + k * k / 4.0, k};
        case ActivationKind::SqSoftmax:
            if (k == -0.5) return {0.0, (k + 0.5) * (k + 0.5) / 2.0};
            return {(k + 0.5) * (k + 0.5) / 2.0, k};
        case ActivationKind::SqSqish:
            if (k == -2.0) return {0.0, k + k * k / 2.0};
            return {k + k * k / 2.0, k + k * k / 32.0};
        case ActivationKind::SqReu:
            if (k == -2.0) return {0.0, k + k * k / 2.0};
            return {k + k * k / 2.0, k};
        }
        return {0.0, 1.0};
    };
    for (ActivationKind kind : kinds)
        for (double k : knees(kind)) {
            const auto [left, right] = branch_pair(kind, k);
            if (left != right || activate(kind, k) != right) ok = false;
        }

    // Derivative spot checks at seeded random points away from the knees.
    SplitMix64 rng(2024);
    const double h = 1e-5;
    double worst_rel = 0.0;
    for (ActivationKind kind : kinds) {
        const auto ks = knees(kind);
        int done = 0;
        while (done < 100) {
            const double x = rng.uniform(-3.0, 3.0);
            bool near = false;
            for (double k : ks)
                if (std::abs(x - k) < 1e-3) near = true;
            if (near) continue;
            const double num = (activate(kind, x + h) - activate(kind, x - h)) / (2.0 * h);
            const double ana = derivative(kind, x);
            const double rel = std::abs(num - ana) / std::max(1.0, std::abs(ana));
            worst_rel = std::max(worst_rel, rel);
            ++done;
        }
    }
    ok = ok && worst_rel <= 1e-6;
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst derivative rel err = %.2e", worst_rel);
    report(7, "float family knees + gradients", ok, t.seconds(), buf);
}

// --------------------------------------------------------------------------
// 8. The fixed cell shadows its float mirror within 4 LSB over 100 random
//    steps, and an all-zero fixture stays silent.
// --------------------------------------------------------------------------
void check_lstm_divergence() {
    Timer t;
    bool ok = true;
    std::int64_t div = -1;
    try {
        const LstmFixture fx = load_lstm_fixture("fixtures/lstm/rand.json");
        LstmCellFixed cell = make_fixed_cell(fx);
        LstmCellFloat ref = float_mirror(cell, FloatActivation::SqnlFamily);
        IntTrace fixed_h, float_h;
        for (const auto& step : fx.steps) {
            const auto rs = lstm_step_fixed(cell, step);
            std::vector<double> xf;
            for (const auto& w : step) xf.push_back(static_cast<double>(w.value) / 64.0);
            const auto rf = lstm_step_float(ref, xf);
            std::vector<std::int64_t> qa, qb;
            for (const auto& w : rs.hidden) qa.push_back(w.value);
            for (double v : rf.hidden) qb.push_back(quantize(v, 8));
            fixed_h.push_back(std::move(qa));
            float_h.push_back(std::move(qb));
        }
        div = divergence(fixed_h, float_h);
        ok = ok && fx.steps.size() == 100 && fx.hidden_size == 4 && div <= 4;

        const LstmFixture zfx = load_lstm_fixture("fixtures/lstm/zero.json");
        LstmCellFixed zcell = make_fixed_cell(zfx);
        for (const auto& step : zfx.steps) {
            const auto out = lstm_step_fixed(zcell, step);
            for (const auto& w : out.hidden) ok = ok && w.value == 0;
        }
    } catch (const std::exception&) {
        ok = false;
    }
    const double secs = t.seconds();
    report(8, "lstm divergence vs float mirror", ok && secs < 1.0, secs,
           "max divergence = " + std::to_string(div) + " LSB over 100 steps");
}

// --------------------------------------------------------------------------
// 9. The counter implementation undercuts the multiplier one at both
//    supported word widths.
// --------------------------------------------------------------------------
void check_resource_ordering() {
    Timer t;
    bool ok = true;
    std::string evidence;
    for (int r : {8, 12}) {
        const auto boms = method_boms(r, 8);
        const std::int64_t counter = estimate(boms[0]);
        const std::int64_t multiplier = estimate(boms[1]);
        ok = ok && counter < multiplier;
        if (!evidence.empty()) evidence += ", ";
        evidence += "R=" + std::to_string(r) + ": " + std::to_string(counter) + " < " +
                    std::to_string(multiplier);
    }
    report(9, "counter beats multiplier", ok, t.seconds(), evidence);
}

// --------------------------------------------------------------------------
// 10. Brute-force rational recomputation agrees with the production
//     integer path over an exhaustive width/length grid.
// --------------------------------------------------------------------------
void check_brute_force_grid() {
    Timer t;
    bool ok = true;
    std::int64_t points = 0;
    for (int r : {4, 6, 8}) {
        std::vector<std::int64_t> lens = {2, 4, 8};
        const std::int64_t full = std::int64_t{1} << (r - 1);
        if (full != 8) lens.push_back(full);
        for (std::int64_t n_len : lens) {
            const GeneratorConfig cfg(r, n_len);
            const std::int64_t m = cfg.m();
            for (std::int64_t n = -m; n < m; ++n) {
                const Rational want = brute_force_eval(n, cfg);
                ok = ok && eval_exact(n, cfg) == want &&
                     eval(Word(n, r), cfg).value == want.floor();
                ++points;
            }
        }
    }
    const double secs = t.seconds();
    report(10, "brute-force grid agreement", ok && secs < 30.0, secs,
           std::to_string(points) + " grid points exact");
}

} // namespace

int main() {
    std::printf("acceptance: square-law activation toolkit\n");
    std::printf("------------------------------------------\n");
    check_oracle_equivalence();
    check_deviation_bounds();
    check_segments();
    check_gated_landmarks();
    check_gate_table();
    check_dither_fit();
    check_float_family();
    check_lstm_divergence();
    check_resource_ordering();
    check_brute_force_grid();
    std::printf("------------------------------------------\n");
    std::printf("%d of 10 criteria passed\n", 10 - g_failures);
    return g_failures;
}

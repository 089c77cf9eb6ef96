// ============================================================================
// Walkthrough of the activation toolkit: sweeps the R=8 mapping at a few
// sequence lengths, shows the gated landmarks, and prints the gate-cost
// comparison between the counter, multiplier, and lookup implementations.
// ============================================================================

#include <cstdio>

#include <sqnl/analysis.hpp>
#include <sqnl/closed_form.hpp>
#include <sqnl/float_family.hpp>
#include <sqnl/generator.hpp>
#include <sqnl/resources.hpp>

using namespace sqnl;

int main() {
    std::printf("symmetric mapping, R=8 (segment count doubles with N)\n");
    std::printf("  N    segments  max|dev|   zero-fraction\n");
    for (std::int64_t n : {std::int64_t{4}, std::int64_t{8}, std::int64_t{16},
                           std::int64_t{32}}) {
        const GeneratorConfig cfg(8, n);
        const DeviationProfile prof = deviation_profile(cfg);
        std::printf("  %-4lld %-9d %-10s %.5f\n", static_cast<long long>(n),
                    count_segments(map_all(cfg)), prof.max_abs_exact().to_string().c_str(),
                    prof.zero_fraction());
    }

    std::printf("\ngated curve at R=8 (five branches, exact rationals)\n");
    const GatedParams p40(8, 40);
    std::printf("  full swing at n=40:    %s\n", gated_exact(40, GatedParams(8, 64)).to_string().c_str());
    std::printf("  f(40, C=40):           %s\n", gated_exact(40, p40).to_string().c_str());
    std::printf("  scaling error at n=40: %s (= %.5f)\n",
                gated_error_exact(40, p40).to_string().c_str(),
                gated_error_exact(40, p40).to_double());

    std::printf("\nper-activation gate costs (NAND equivalents)\n");
    for (int r : {8, 12}) {
        std::printf("  R=%-2d ", r);
        for (const auto& bom : method_boms(r, 8))
            std::printf(" %s=%lld", bom.label.c_str(), static_cast<long long>(estimate(bom)));
        std::printf("\n");
    }

    std::printf("\nfloat family at a few points\n");
    std::printf("  x      sqnl     sq_logsig  sqlu     sq_reu\n");
    for (double x : {-3.0, -1.0, 0.0, 1.0, 3.0})
        std::printf("  %-6.2f %-8.4f %-10.4f %-8.4f %-8.4f\n", x,
                    activate(ActivationKind::Sqnl, x), activate(ActivationKind::SqLogSig, x),
                    activate(ActivationKind::Sqlu, x), activate(ActivationKind::SqReu, x));
    return 0;
}

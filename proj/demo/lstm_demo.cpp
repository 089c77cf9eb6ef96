// ============================================================================
// Fixed-point LSTM demonstration. Builds a small cell with seeded random
// weights, runs it side by side with its float mirror, and reports the
// per-step hidden states and the worst divergence for both forget-path
// wirings. Self-contained: no fixture files needed.
// ============================================================================

#include <cmath>
#include <cstdio>
#include <vector>

#include <sqnl/nn.hpp>
#include <sqnl/rng.hpp>

using namespace sqnl;

namespace {

constexpr int kInput = 3;
constexpr int kHidden = 4;
constexpr int kSteps = 20;

// Same quantization recipe as the shipped fixtures: draw a small real,
// scale by 2^(R-2) (squared for biases), round half up.
std::int64_t quant(double v, double scale) { return std::llround(v * scale); }

DenseLayer draw_layer(SplitMix64& rng, double wspan, double bspan, double bshift) {
    DenseLayer layer;
    layer.r_w = layer.r_in = 8;
    for (int j = 0; j < kHidden; ++j) {
        std::vector<Word> row;
        for (int k = 0; k < kInput + kHidden; ++k)
            row.emplace_back(quant(rng.uniform(-wspan, wspan), 64.0), 8);
        layer.weights.push_back(std::move(row));
        layer.bias.push_back(quant(rng.uniform(-bspan, bspan) + bshift, 4096.0));
    }
    return layer;
}

} // namespace

int main() {
    SplitMix64 rng(7);
    const DenseLayer gi = draw_layer(rng, 0.08, 0.10, 0.0);
    const DenseLayer gf = draw_layer(rng, 0.08, 0.10, -0.15);
    const DenseLayer go = draw_layer(rng, 0.08, 0.10, 0.0);
    const DenseLayer gc = draw_layer(rng, 0.08, 0.10, 0.0);

    std::vector<std::vector<Word>> steps;
    for (int t = 0; t < kSteps; ++t) {
        std::vector<Word> x;
        for (int k = 0; k < kInput; ++k) x.emplace_back(quant(rng.uniform(-0.75, 0.75), 64.0), 8);
        steps.push_back(std::move(x));
    }

    for (bool multiply : {false, true}) {
        LstmOptions opt;
        opt.forget_multiply = multiply;
        LstmCellFixed cell(opt, gi, gf, go, gc);
        LstmCellFloat ref = float_mirror(cell, FloatActivation::SqnlFamily);

        std::printf("forget path: %s\n", multiply ? "exact multiply" : "gated block");
        std::printf("  t   fixed h[0..3]          quantized float mirror\n");
        std::int64_t worst = 0;
        for (int t = 0; t < kSteps; ++t) {
            const auto rs = lstm_step_fixed(cell, steps[static_cast<std::size_t>(t)]);
            std::vector<double> xf;
            for (const auto& w : steps[static_cast<std::size_t>(t)])
                xf.push_back(static_cast<double>(w.value) / 64.0);
            const auto rf = lstm_step_float(ref, xf);
            std::printf("  %-3d ", t);
            for (const auto& w : rs.hidden) std::printf("%4lld ", static_cast<long long>(w.value));
            std::printf("   ");
            for (std::size_t j = 0; j < rf.hidden.size(); ++j) {
                const std::int64_t q = quantize(rf.hidden[j], 8);
                worst = std::max<std::int64_t>(worst, std::llabs(q - rs.hidden[j].value));
                std::printf("%4lld ", static_cast<long long>(q));
            }
            std::printf("\n");
        }
        std::printf("  worst divergence over %d steps: %lld LSB\n\n", kSteps,
                    static_cast<long long>(worst));
    }
    return 0;
}

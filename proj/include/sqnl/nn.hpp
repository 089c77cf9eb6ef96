#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "errors.hpp"
#include "fixed_point.hpp"
#include "float_family.hpp"
#include "generator.hpp"

namespace sqnl {

// ============================================================================
// Desk-scale fixed-point inference. Scaling convention: one real unit is
// 2^(R-2) codes. Weights and inputs both live at that scale, so raw net
// sums sit at 2^(2R-4) (biases are stored pre-scaled to match) and come
// back down via an arithmetic shift of R-2 before activation.
//
// The LSTM cell replaces two of the three elementwise products with the
// gated generator: the gate's own activation output drives the C port of
// the gated block squashing the other operand. The forget path is the one
// place the literature leaves open, so it is switchable between a third
// gated block (reference wiring) and an exact multiply + resize.
// ============================================================================

struct DenseLayer {
    std::vector<std::vector<Word>> weights; // [out][in], width r_w
    std::vector<std::int64_t> bias;         // pre-scaled to the product scale
    int r_w = 8;
    int r_in = 8;

    // Worst-case accumulator width; must stay inside int64.
    int r_acc() const {
        int fan_in = weights.empty() ? 1 : static_cast<int>(weights.front().size());
        int log2_ceil = 0;
        while ((1 << log2_ceil) < fan_in) ++log2_ceil;
        return r_w + r_in + log2_ceil + 1;
    }
};

inline std::vector<std::int64_t> gemm_netsum(const DenseLayer& layer,
                                             const std::vector<Word>& input) {
    if (layer.bias.size() != layer.weights.size())
        throw domain_error("gemm_netsum: bias/weight row mismatch");
    if (layer.r_acc() > 62) throw invariant_error("gemm_netsum: accumulator would overflow");
    std::vector<std::int64_t> out;
    out.reserve(layer.weights.size());
    for (std::size_t j = 0; j < layer.weights.size(); ++j) {
        const auto& row = layer.weights[j];
        if (row.size() != input.size())
            throw domain_error("gemm_netsum: fan-in " + std::to_string(row.size()) +
                               " does not match input length " + std::to_string(input.size()));
        std::int64_t acc = layer.bias[j];
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (input[k].width != layer.r_in)
                throw domain_error("gemm_netsum: input width mismatch");
            acc += row[k].value * input[k].value;
        }
        out.push_back(acc);
    }
    return out;
}

// Net sums come down from the product scale to word scale: arithmetic shift
// by R-2, then saturate into the R-bit range.
inline Word descale_netsum(std::int64_t net, int r) {
    const std::int64_t shifted = net >> (r - 2);
    return Word(sat(shifted, width_min(r), width_max(r)), r);
}

struct LstmOptions {
    int r = 8;
    std::int64_t n = 0;          // generator sequence length; 0 means 2^(R-1)
    bool forget_multiply = false; // true: exact multiply + resize on the forget path

    std::int64_t seq_len() const { return n == 0 ? (std::int64_t{1} << (r - 1)) : n; }
};

struct LstmCellFixed {
    LstmOptions opt;
    DenseLayer gate_in, gate_forget, gate_out, gate_cand; // over [x ; h_prev]
    std::vector<Word> c, h;

    LstmCellFixed(LstmOptions o, DenseLayer gi, DenseLayer gf, DenseLayer go, DenseLayer gc)
        : opt(o), gate_in(std::move(gi)), gate_forget(std::move(gf)), gate_out(std::move(go)),
          gate_cand(std::move(gc)) {
        const std::size_t hidden = gate_in.weights.size();
        if (gate_forget.weights.size() != hidden || gate_out.weights.size() != hidden ||
            gate_cand.weights.size() != hidden)
            throw domain_error("LstmCellFixed: gate layers disagree on hidden size");
        c.assign(hidden, Word(0, opt.r));
        h.assign(hidden, Word(0, opt.r));
    }

    std::size_t hidden_size() const { return c.size(); }
};

struct LstmStepResult {
    std::vector<Word> hidden;
    std::vector<Word> cell;
};

inline LstmStepResult lstm_step_fixed(LstmCellFixed& cell, const std::vector<Word>& x) {
    const int r = cell.opt.r;
    const std::int64_t n_seq = cell.opt.seq_len();
    const GeneratorConfig log_cfg(r, n_seq, GeneratorMode::log_sqnl());
    const GeneratorConfig gated_cfg(r, n_seq, GeneratorMode::gated());

    std::vector<Word> in;
    in.reserve(x.size() + cell.h.size());
    for (const auto& w : x) in.push_back(w);
    for (const auto& w : cell.h) in.push_back(w);

    const auto net_i = gemm_netsum(cell.gate_in, in);
    const auto net_f = gemm_netsum(cell.gate_forget, in);
    const auto net_o = gemm_netsum(cell.gate_out, in);
    const auto net_c = gemm_netsum(cell.gate_cand, in);

    const SatBound word_range(width_min(r), width_max(r));
    std::vector<Word> new_c, new_h;
    new_c.reserve(cell.hidden_size());
    new_h.reserve(cell.hidden_size());
    for (std::size_t j = 0; j < cell.hidden_size(); ++j) {
        const std::int64_t iq = eval(descale_netsum(net_i[j], r), log_cfg).value;
        const std::int64_t fq = eval(descale_netsum(net_f[j], r), log_cfg).value;
        const std::int64_t oq = eval(descale_netsum(net_o[j], r), log_cfg).value;

        // Candidate squashed and scaled by the input gate in one block.
        const std::int64_t cand = eval(descale_netsum(net_c[j], r), gated_cfg, iq).value;

        std::int64_t retained;
        if (cell.opt.forget_multiply) {
            retained = sat((fq * cell.c[j].value) >> (r - 2), word_range);
        } else {
            retained = eval(cell.c[j], gated_cfg, fq).value;
        }

        const Word c_next(sat(retained + cand, word_range), r);
        const Word h_next(eval(c_next, gated_cfg, oq));
        new_c.push_back(c_next);
        new_h.push_back(h_next);
    }
    cell.c = new_c;
    cell.h = new_h;
    return LstmStepResult{new_h, new_c};
}

// ---------------------------------------------------------------------------
// Float reference cell.
// ---------------------------------------------------------------------------

enum class FloatActivation { SqnlFamily, TanhLogistic };

struct LstmCellFloat {
    FloatActivation act = FloatActivation::SqnlFamily;
    std::vector<std::vector<double>> wi, wf, wo, wc; // [hidden][input+hidden]
    std::vector<double> bi, bf, bo, bc;
    std::vector<double> c, h;

    std::size_t hidden_size() const { return c.size(); }
};

namespace detail {

inline std::vector<double> float_netsum(const std::vector<std::vector<double>>& w,
                                        const std::vector<double>& b,
                                        const std::vector<double>& in) {
    if (w.size() != b.size()) throw domain_error("float_netsum: bias/weight row mismatch");
    std::vector<double> out;
    out.reserve(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (w[j].size() != in.size()) throw domain_error("float_netsum: fan-in mismatch");
        double acc = b[j];
        for (std::size_t k = 0; k < in.size(); ++k) acc += w[j][k] * in[k];
        out.push_back(acc);
    }
    return out;
}

inline double squash_gate(FloatActivation act, double x) {
    return act == FloatActivation::SqnlFamily ? activate(ActivationKind::SqLogSig, x)
                                              : 1.0 / (1.0 + std::exp(-x));
}

inline double squash_state(FloatActivation act, double x) {
    return act == FloatActivation::SqnlFamily ? activate(ActivationKind::Sqnl, x) : std::tanh(x);
}

} // namespace detail

struct LstmStepResultFloat {
    std::vector<double> hidden;
    std::vector<double> cell;
};

inline LstmStepResultFloat lstm_step_float(LstmCellFloat& cell, const std::vector<double>& x) {
    std::vector<double> in;
    in.reserve(x.size() + cell.h.size());
    for (double v : x) in.push_back(v);
    for (double v : cell.h) in.push_back(v);

    const auto net_i = detail::float_netsum(cell.wi, cell.bi, in);
    const auto net_f = detail::float_netsum(cell.wf, cell.bf, in);
    const auto net_o = detail::float_netsum(cell.wo, cell.bo, in);
    const auto net_c = detail::float_netsum(cell.wc, cell.bc, in);

    std::vector<double> new_c, new_h;
    new_c.reserve(cell.hidden_size());
    new_h.reserve(cell.hidden_size());
    for (std::size_t j = 0; j < cell.hidden_size(); ++j) {
        const double ig = detail::squash_gate(cell.act, net_i[j]);
        const double fg = detail::squash_gate(cell.act, net_f[j]);
        const double og = detail::squash_gate(cell.act, net_o[j]);
        const double cand = detail::squash_state(cell.act, net_c[j]);
        const double cv = fg * cell.c[j] + ig * cand;
        new_c.push_back(cv);
        new_h.push_back(og * detail::squash_state(cell.act, cv));
    }
    cell.c = new_c;
    cell.h = new_h;
    return LstmStepResultFloat{new_h, new_c};
}

// ---------------------------------------------------------------------------
// Trace comparison.
// ---------------------------------------------------------------------------

// Real value -> code at the shared scale, half away from zero.
inline std::int64_t quantize(double x, int r) {
    return std::llround(x * static_cast<double>(std::int64_t{1} << (r - 2)));
}

using IntTrace = std::vector<std::vector<std::int64_t>>;

inline std::int64_t divergence(const IntTrace& a, const IntTrace& b) {
    if (a.size() != b.size()) throw domain_error("divergence: trace length mismatch");
    std::int64_t worst = 0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        if (a[t].size() != b[t].size()) throw domain_error("divergence: trace width mismatch");
        for (std::size_t j = 0; j < a[t].size(); ++j) {
            const std::int64_t d = std::llabs(a[t][j] - b[t][j]);
            if (d > worst) worst = d;
        }
    }
    return worst;
}

// Build the float mirror of a fixed cell by descaling its integer weights.
inline LstmCellFloat float_mirror(const LstmCellFixed& cell, FloatActivation act) {
    const double scale = static_cast<double>(std::int64_t{1} << (cell.opt.r - 2));
    const double scale2 = scale * scale;
    LstmCellFloat out;
    out.act = act;
    auto conv = [&](const DenseLayer& layer, std::vector<std::vector<double>>& w,
                    std::vector<double>& b) {
        w.resize(layer.weights.size());
        for (std::size_t j = 0; j < layer.weights.size(); ++j) {
            w[j].reserve(layer.weights[j].size());
            for (const Word& ww : layer.weights[j])
                w[j].push_back(static_cast<double>(ww.value) / scale);
        }
        b.reserve(layer.bias.size());
        for (std::int64_t bb : layer.bias) b.push_back(static_cast<double>(bb) / scale2);
    };
    conv(cell.gate_in, out.wi, out.bi);
    conv(cell.gate_forget, out.wf, out.bf);
    conv(cell.gate_out, out.wo, out.bo);
    conv(cell.gate_cand, out.wc, out.bc);
    out.c.assign(cell.hidden_size(), 0.0);
    out.h.assign(cell.hidden_size(), 0.0);
    return out;
}

} // namespace sqnl

// ============================================================================
// sqnl — command-line front end.
//
// Subcommands: map, deviate, estimate, fit, lstm. Every run writes its
// records to a CSV (or JSON mirror) file and prints a one-line key=value
// summary on stdout. Output is deterministic for identical arguments:
// floats are serialized with shortest-round-trip formatting and files are
// written to a temp name and renamed into place.
//
// Exit codes: 0 success, 2 argument error, 3 domain/precondition error,
// 4 internal invariant violation.
// ============================================================================

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <sqnl/analysis.hpp>
#include <sqnl/closed_form.hpp>
#include <sqnl/dither.hpp>
#include <sqnl/errors.hpp>
#include <sqnl/float_family.hpp>
#include <sqnl/generator.hpp>
#include <sqnl/goldens.hpp>
#include <sqnl/nn.hpp>
#include <sqnl/rational.hpp>
#include <sqnl/resources.hpp>

namespace {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// --out is taken as given when absolute; otherwise it lands under
// SQNL_OUT_DIR when that is set, or the working directory when not.
std::string resolve_out(const std::string& name) {
    if (!name.empty() && name.front() == '/') return name;
    const char* dir = std::getenv("SQNL_OUT_DIR");
    if (dir && *dir) return std::string(dir) + "/" + name;
    return name;
}

void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw sqnl::domain_error("cannot open '" + tmp + "' for writing");
        out << content;
        if (!out) throw sqnl::domain_error("write failed for '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw sqnl::domain_error("cannot rename '" + tmp + "' to '" + path + "'");
}

sqnl::GeneratorMode parse_mode(const std::string& mode, std::int64_t alpha) {
    if (mode == "symmetric") return sqnl::GeneratorMode::symmetric();
    if (mode == "logsqnl") return sqnl::GeneratorMode::log_sqnl();
    if (mode == "asymmetric") return sqnl::GeneratorMode::asymmetric(alpha);
    if (mode == "gated") return sqnl::GeneratorMode::gated();
    throw sqnl::domain_error("unknown mode '" + mode + "'");
}

// ---------------------------------------------------------------------------

struct MapArgs {
    int r = 8;
    std::int64_t n = 8;
    std::string mode = "symmetric";
    std::int64_t alpha = 0;
    std::optional<std::int64_t> c;
    bool endpoint_anchor = false;
    std::string out = "map.csv";
    std::string format = "csv";
};

int cmd_map(const MapArgs& a) {
    const sqnl::GeneratorConfig cfg(a.r, a.n, parse_mode(a.mode, a.alpha), a.endpoint_anchor);
    if (cfg.mode.kind == sqnl::ModeKind::Gated && !a.c)
        throw sqnl::domain_error("gated mode requires --c");
    const auto table = sqnl::map_all(cfg, a.c);

    std::string path = resolve_out(a.out);
    if (a.format == "csv") {
        std::string body = "n,f\n";
        for (const auto& e : table.entries)
            body += std::to_string(e.n) + "," + std::to_string(e.f) + "\n";
        write_atomic(path, body);
    } else {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& e : table.entries) rows.push_back({{"n", e.n}, {"f", e.f}});
        nlohmann::json doc{{"r", table.r},
                           {"cycles_per_activation", table.cycles_per_activation},
                           {"entries", rows}};
        write_atomic(path, doc.dump(1) + "\n");
    }

    std::int64_t fmin = table.entries.front().f, fmax = fmin;
    for (const auto& e : table.entries) {
        fmin = std::min(fmin, e.f);
        fmax = std::max(fmax, e.f);
    }
    std::printf("rows=%zu min=%lld max=%lld cycles=%lld file=%s\n", table.entries.size(),
                static_cast<long long>(fmin), static_cast<long long>(fmax),
                static_cast<long long>(table.cycles_per_activation), path.c_str());
    return 0;
}

// ---------------------------------------------------------------------------

struct DeviateArgs {
    int r = 8;
    std::int64_t n = 8;
    int bins = 16;
    std::string out = "deviation.csv";
    std::string hist_out = "deviation_hist.csv";
    std::string format = "csv";
};

int cmd_deviate(const DeviateArgs& a) {
    const sqnl::GeneratorConfig cfg(a.r, a.n);
    const auto prof = sqnl::deviation_profile(cfg);
    const auto hist = sqnl::deviation_histogram(prof, a.bins);

    const std::string ppath = resolve_out(a.out);
    const std::string hpath = resolve_out(a.hist_out);
    if (a.format == "csv") {
        std::string body = "n,dev,dev_real,lsb\n";
        for (const auto& e : prof.entries)
            body += std::to_string(e.n) + "," + e.exact_dev.to_string() + "," +
                    format_double(e.exact_dev.to_double()) + "," + std::to_string(e.lsb_dev) +
                    "\n";
        write_atomic(ppath, body);
        std::string hbody = "bin_lo,bin_hi,count\n";
        for (std::size_t i = 0; i < hist.counts.size(); ++i)
            hbody += hist.edges[i].to_string() + "," + hist.edges[i + 1].to_string() + "," +
                     std::to_string(hist.counts[i]) + "\n";
        write_atomic(hpath, hbody);
    } else {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& e : prof.entries)
            rows.push_back({{"n", e.n},
                            {"dev", e.exact_dev.to_string()},
                            {"dev_real", e.exact_dev.to_double()},
                            {"lsb", e.lsb_dev}});
        write_atomic(ppath, nlohmann::json{{"entries", rows}}.dump(1) + "\n");
        nlohmann::json hrows = nlohmann::json::array();
        for (std::size_t i = 0; i < hist.counts.size(); ++i)
            hrows.push_back({{"bin_lo", hist.edges[i].to_string()},
                             {"bin_hi", hist.edges[i + 1].to_string()},
                             {"count", hist.counts[i]}});
        write_atomic(hpath, nlohmann::json{{"bins", hrows}}.dump(1) + "\n");
    }

    std::printf("max_abs_dev=%s max_lsb=%lld zero_fraction=%s profile=%s hist=%s\n",
                prof.max_abs_exact().to_string().c_str(),
                static_cast<long long>(prof.max_lsb()),
                format_double(prof.zero_fraction()).c_str(), ppath.c_str(), hpath.c_str());
    return 0;
}

// ---------------------------------------------------------------------------

struct EstimateArgs {
    std::string block;
    int r = 8;
    std::int64_t n = 8;
    std::string bom;
    bool methods = false;
    std::string out = "estimate.csv";
    std::string format = "csv";
};

int cmd_estimate(const EstimateArgs& a) {
    const int chosen = (!a.block.empty() ? 1 : 0) + (!a.bom.empty() ? 1 : 0) + (a.methods ? 1 : 0);
    if (chosen != 1)
        throw sqnl::domain_error("estimate: choose exactly one of --block, --bom, --methods");

    const std::string path = resolve_out(a.out);
    if (!a.block.empty()) {
        const sqnl::Block block(sqnl::block_kind_from_name(a.block), a.r);
        const std::int64_t gates = sqnl::gate_cost(block);
        if (a.format == "csv") {
            write_atomic(path, "kind,width,gates\n" + a.block + "," + std::to_string(a.r) + "," +
                                   std::to_string(gates) + "\n");
        } else {
            write_atomic(path,
                         nlohmann::json{{"kind", a.block}, {"width", a.r}, {"gates", gates}}.dump(1) +
                             "\n");
        }
        std::printf("kind=%s width=%d gates=%lld file=%s\n", a.block.c_str(), a.r,
                    static_cast<long long>(gates), path.c_str());
        return 0;
    }
    if (!a.bom.empty()) {
        const auto bom = sqnl::load_bom(a.bom);
        const std::int64_t gates = sqnl::estimate(bom);
        if (a.format == "csv") {
            std::string body = "label,gates\n" + bom.label + "," + std::to_string(gates) + "\n";
            write_atomic(path, body);
        } else {
            nlohmann::json doc = sqnl::bom_to_json(bom);
            doc["gates"] = gates;
            write_atomic(path, doc.dump(1) + "\n");
        }
        std::printf("label=%s gates=%lld file=%s\n", bom.label.c_str(),
                    static_cast<long long>(gates), path.c_str());
        return 0;
    }

    const auto boms = sqnl::method_boms(a.r, a.n);
    std::string body = "method,gates\n";
    nlohmann::json rows = nlohmann::json::array();
    std::string summary;
    for (const auto& bom : boms) {
        const std::int64_t gates = sqnl::estimate(bom);
        body += bom.label + "," + std::to_string(gates) + "\n";
        rows.push_back({{"method", bom.label}, {"gates", gates}});
        summary += (summary.empty() ? "" : " ") + bom.label + "=" + std::to_string(gates);
    }
    if (a.format == "csv")
        write_atomic(path, body);
    else
        write_atomic(path, nlohmann::json{{"methods", rows}}.dump(1) + "\n");
    std::printf("%s file=%s\n", summary.c_str(), path.c_str());
    return 0;
}

// ---------------------------------------------------------------------------

struct FitArgs {
    std::uint64_t seed = 1;
    int oversample = 1024;
    int points = 201;
    bool selftest = false;
    bool stock_limits = false; // use the plain defaults instead of the preset
    double adder_limit = -1, sub_limit = -1, dither_range = -1;
    std::string out = "fit.json";
};

int cmd_fit(const FitArgs& a) {
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(a.points));
    if (a.points < 50) throw sqnl::domain_error("fit: need at least 50 points");
    for (int i = 0; i < a.points; ++i)
        xs.push_back(-1.5 + 3.0 * static_cast<double>(i) / static_cast<double>(a.points - 1));

    std::vector<double> ys;
    if (a.selftest) {
        ys.reserve(xs.size());
        for (double x : xs) ys.push_back(sqnl::tansig_model(x, -2.0, 0.0));
    } else {
        sqnl::DitherConfig cfg =
            a.stock_limits ? sqnl::DitherConfig{} : sqnl::DitherConfig::calibrated(a.seed);
        cfg.oversample = a.oversample;
        cfg.seed = a.seed;
        if (a.adder_limit > 0) cfg.adder_limit = a.adder_limit;
        if (a.sub_limit > 0) cfg.sub_limit = a.sub_limit;
        if (a.dither_range > 0) cfg.dither_range = a.dither_range;
        ys = sqnl::simulate(xs, cfg);
    }

    const sqnl::FitResult fit = sqnl::fit_tansig(xs, ys);
    if (a.selftest && (std::abs(fit.a + 2.0) > 1e-6 || std::abs(fit.b) > 1e-6))
        throw sqnl::invariant_error("fit selftest failed to recover the generating parameters");

    const std::string path = resolve_out(a.out);
    nlohmann::json doc{{"a", fit.a},
                       {"b", fit.b},
                       {"rmse", fit.rmse},
                       {"iterations", fit.iterations},
                       {"converged", fit.converged},
                       {"selftest", a.selftest}};
    write_atomic(path, doc.dump(1) + "\n");
    std::printf("a=%s b=%s rmse=%s iterations=%d converged=%d file=%s\n",
                format_double(fit.a).c_str(), format_double(fit.b).c_str(),
                format_double(fit.rmse).c_str(), fit.iterations, fit.converged ? 1 : 0,
                path.c_str());
    return 0;
}

// ---------------------------------------------------------------------------

struct LstmArgs {
    std::string fixture;
    std::int64_t steps = -1; // -1: all fixture steps
    bool compare_float = false;
    std::string forget_path; // empty: keep the fixture's wiring
    std::string out = "lstm.csv";
    std::string format = "csv";
};

int cmd_lstm(const LstmArgs& a) {
    sqnl::LstmFixture fx = sqnl::load_lstm_fixture(a.fixture);
    if (!a.forget_path.empty()) {
        if (a.forget_path == "gated")
            fx.opt.forget_multiply = false;
        else if (a.forget_path == "multiply")
            fx.opt.forget_multiply = true;
        else
            throw sqnl::domain_error("--forget-path must be 'gated' or 'multiply'");
    }
    std::size_t steps = fx.steps.size();
    if (a.steps >= 0) {
        if (static_cast<std::size_t>(a.steps) > fx.steps.size())
            throw sqnl::domain_error("fixture provides only " + std::to_string(fx.steps.size()) +
                                     " steps");
        steps = static_cast<std::size_t>(a.steps);
    }

    auto cell = sqnl::make_fixed_cell(fx);
    auto ref = sqnl::float_mirror(cell, sqnl::FloatActivation::SqnlFamily);
    const double scale = static_cast<double>(std::int64_t{1} << (fx.opt.r - 2));

    sqnl::IntTrace fixed_trace, float_trace;
    for (std::size_t t = 0; t < steps; ++t) {
        const auto rf = sqnl::lstm_step_fixed(cell, fx.steps[t]);
        std::vector<std::int64_t> row;
        row.reserve(rf.hidden.size());
        for (const auto& w : rf.hidden) row.push_back(w.value);
        fixed_trace.push_back(std::move(row));
        if (a.compare_float) {
            std::vector<double> xf;
            xf.reserve(fx.steps[t].size());
            for (const auto& w : fx.steps[t])
                xf.push_back(static_cast<double>(w.value) / scale);
            const auto rl = sqnl::lstm_step_float(ref, xf);
            std::vector<std::int64_t> qrow;
            qrow.reserve(rl.hidden.size());
            for (double v : rl.hidden) qrow.push_back(sqnl::quantize(v, fx.opt.r));
            float_trace.push_back(std::move(qrow));
        }
    }

    const std::string path = resolve_out(a.out);
    if (a.format == "csv") {
        std::string body = "t";
        for (int j = 0; j < fx.hidden_size; ++j) body += ",h" + std::to_string(j);
        if (a.compare_float)
            for (int j = 0; j < fx.hidden_size; ++j) body += ",href" + std::to_string(j);
        body += "\n";
        for (std::size_t t = 0; t < fixed_trace.size(); ++t) {
            body += std::to_string(t);
            for (std::int64_t v : fixed_trace[t]) body += "," + std::to_string(v);
            if (a.compare_float)
                for (std::int64_t v : float_trace[t]) body += "," + std::to_string(v);
            body += "\n";
        }
        write_atomic(path, body);
    } else {
        nlohmann::json doc{{"fixed", fixed_trace}};
        if (a.compare_float) doc["reference"] = float_trace;
        write_atomic(path, doc.dump(1) + "\n");
    }

    if (a.compare_float) {
        const std::int64_t div = sqnl::divergence(fixed_trace, float_trace);
        std::printf("steps=%zu divergence=%lld file=%s\n", fixed_trace.size(),
                    static_cast<long long>(div), path.c_str());
    } else {
        std::printf("steps=%zu file=%s\n", fixed_trace.size(), path.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bit-exact simulator and analysis toolkit for square-law activations"};
    app.require_subcommand(1);

    MapArgs ma;
    auto* map = app.add_subcommand("map", "Sweep the full input domain and write the mapping");
    map->add_option("--r", ma.r, "word width in bits");
    map->add_option("--n", ma.n, "sequence length (power of two)");
    map->add_option("--mode", ma.mode, "symmetric|logsqnl|asymmetric|gated");
    map->add_option("--alpha", ma.alpha, "asymmetric offset");
    auto* copt = map->add_option("--c", "gated scale");
    map->add_flag("--endpoint-anchor", ma.endpoint_anchor, "experimental sequence anchoring");
    map->add_option("--out", ma.out, "output file");
    map->add_option("--format", ma.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    DeviateArgs da;
    auto* dev = app.add_subcommand("deviate", "Deviation profile against the analytic mapping");
    dev->add_option("--r", da.r, "word width in bits");
    dev->add_option("--n", da.n, "sequence length (power of two)");
    dev->add_option("--bins", da.bins, "histogram bin count");
    dev->add_option("--out", da.out, "profile output file");
    dev->add_option("--hist-out", da.hist_out, "histogram output file");
    dev->add_option("--format", da.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    EstimateArgs ea;
    auto* est = app.add_subcommand("estimate", "Gate-cost estimates for blocks and BOMs");
    est->add_option("--block", ea.block, "single block kind");
    est->add_option("--r", ea.r, "block width / method word width");
    est->add_option("--n", ea.n, "sequence length for the counter method");
    est->add_option("--bom", ea.bom, "BOM JSON file");
    est->add_flag("--methods", ea.methods, "compare counter/multiplier/lut implementations");
    est->add_option("--out", ea.out, "output file");
    est->add_option("--format", ea.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    FitArgs fa;
    auto* fit = app.add_subcommand("fit", "Simulate the dither reference and fit its curve");
    fit->add_option("--seed", fa.seed, "RNG seed");
    fit->add_option("--oversample", fa.oversample, "draws per input point");
    fit->add_option("--points", fa.points, "sample grid size on [-1.5, 1.5]");
    fit->add_flag("--selftest", fa.selftest, "fit synthetic data from known parameters");
    fit->add_flag("--stock-limits", fa.stock_limits, "use the plain limits, not the fit preset");
    fit->add_option("--adder-limit", fa.adder_limit, "override first-stage limit");
    fit->add_option("--sub-limit", fa.sub_limit, "override restore-stage limit");
    fit->add_option("--dither-range", fa.dither_range, "override dither span");
    fit->add_option("--out", fa.out, "output file");

    LstmArgs la;
    auto* lstm = app.add_subcommand("lstm", "Run the fixed-point LSTM demo from a fixture");
    lstm->add_option("--fixture", la.fixture, "fixture JSON file")->required();
    lstm->add_option("--steps", la.steps, "number of steps (default: all)");
    lstm->add_flag("--compare-float", la.compare_float, "also run the float mirror");
    lstm->add_option("--forget-path", la.forget_path, "gated|multiply (default: fixture's)");
    lstm->add_option("--out", la.out, "output file");
    lstm->add_option("--format", la.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "argument error: %s\n", e.what());
        return 2;
    }

    try {
        if (map->parsed()) {
            if (copt->count()) ma.c = copt->as<std::int64_t>();
            return cmd_map(ma);
        }
        if (dev->parsed()) return cmd_deviate(da);
        if (est->parsed()) return cmd_estimate(ea);
        if (fit->parsed()) return cmd_fit(fa);
        if (lstm->parsed()) return cmd_lstm(la);
    } catch (const sqnl::domain_error& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return 3;
    } catch (const sqnl::invariant_error& e) {
        std::fprintf(stderr, "invariant violation: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 4;
    }
    return 0;
}

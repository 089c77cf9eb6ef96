#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "generator.hpp"
#include "nn.hpp"
#include "rational.hpp"
#include "resources.hpp"

namespace sqnl {

// ============================================================================
// Fixture store and independent oracles. brute_force_eval re-walks the
// iterative sum in plain rational arithmetic — no doubled integers, no
// shift tricks — so the generator and this function share nothing but the
// sequence definition.
// ============================================================================

namespace detail {

inline Rational rsat(const Rational& x, const Rational& lo, const Rational& hi) {
    if (x <= lo) return lo;
    if (x >= hi) return hi;
    return x;
}

} // namespace detail

inline Rational brute_force_eval(std::int64_t n, const GeneratorConfig& cfg,
                                std::optional<std::int64_t> c_scale = std::nullopt) {
    if (cfg.r > 12) throw domain_error("brute_force_eval: width capped at 12 for oracle use");
    std::int64_t c = 0;
    if (cfg.mode.kind == ModeKind::Gated) {
        if (!c_scale) throw domain_error("brute_force_eval: gated mode requires C");
        c = *c_scale;
    } else if (c_scale) {
        throw domain_error("brute_force_eval: C only valid in gated mode");
    }

    Rational add_lo(0), add_hi(0);
    switch (cfg.mode.kind) {
    case ModeKind::Asymmetric:
        add_lo = Rational(-cfg.u_max());
        add_hi = Rational(cfg.m());
        break;
    case ModeKind::Gated:
        add_lo = Rational(-c);
        add_hi = Rational(c);
        break;
    default:
        add_lo = Rational(-cfg.u_max());
        add_hi = Rational(cfg.u_max());
        break;
    }
    const Rational sub_lo(-cfg.m()), sub_hi(cfg.m());

    const Sequence seq = make_sequence(cfg);
    Rational acc(0);
    for (std::size_t k = 0; k < seq.size(); ++k) {
        const Rational u = seq.value(k);
        Rational t = detail::rsat(Rational(n) + u, add_lo, add_hi);
        t = detail::rsat(t - u, sub_lo, sub_hi);
        acc += t;
    }
    Rational avg = acc / Rational(cfg.n);
    if (cfg.mode.kind == ModeKind::LogSqnl)
        avg = avg / Rational(2) + Rational(std::int64_t{1} << (cfg.r - 3));
    return avg;
}

// ---------------------------------------------------------------------------
// Golden cases: {"id","module","config","input","expected","tag","oracle"}.
// Tags: "reference" (published value), "trivial", or "derived"; a derived
// case must say which procedure produced its expectation.
// ---------------------------------------------------------------------------

struct GoldenCase {
    std::string id;
    std::string module;
    nlohmann::json config;
    nlohmann::json input;
    nlohmann::json expected;
    std::string tag;
    std::string oracle;
};

inline std::vector<GoldenCase> load_goldens(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("load_goldens: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return {};

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw domain_error("load_goldens: '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_array()) throw domain_error("load_goldens: top level of '" + path + "' must be an array");

    std::vector<GoldenCase> cases;
    cases.reserve(doc.size());
    for (const auto& j : doc) {
        GoldenCase g;
        if (!j.contains("id") || !j["id"].is_string())
            throw domain_error("load_goldens: case without a string id in '" + path + "'");
        g.id = j["id"].get<std::string>();
        auto fail = [&](const std::string& why) {
            throw domain_error("golden case '" + g.id + "': " + why);
        };
        if (!j.contains("module") || !j["module"].is_string()) fail("missing module");
        g.module = j["module"].get<std::string>();
        if (!j.contains("expected")) fail("missing expected value");
        g.expected = j["expected"];
        if (!j.contains("tag") || !j["tag"].is_string()) fail("missing tag");
        g.tag = j["tag"].get<std::string>();
        if (g.tag != "reference" && g.tag != "trivial" && g.tag != "derived")
            fail("unknown tag '" + g.tag + "'");
        g.config = j.value("config", nlohmann::json::object());
        g.input = j.value("input", nlohmann::json::object());
        g.oracle = j.value("oracle", std::string{});
        if (g.tag == "derived" && g.oracle.empty()) fail("derived case must name its oracle");
        cases.push_back(std::move(g));
    }
    return cases;
}

// "p/q" or a plain integer (JSON number or decimal string).
inline Rational parse_rational(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(std::stoll(s));
            return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } catch (const std::logic_error&) {
            throw domain_error("parse_rational: bad literal '" + s + "'");
        }
    }
    throw domain_error("parse_rational: expected integer or 'p/q' string");
}

// ---------------------------------------------------------------------------
// BOM files: {"label": str, "items": [{"kind": str, "width": int, "count": int}]}.
// ---------------------------------------------------------------------------

inline BillOfMaterials bom_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("items") || !j["items"].is_array())
        throw domain_error("bom_from_json: need an object with an items array");
    BillOfMaterials bom;
    bom.label = j.value("label", std::string{});
    for (const auto& item : j["items"]) {
        if (!item.contains("kind") || !item["kind"].is_string())
            throw domain_error("bom_from_json: item without kind");
        const BlockKind kind = block_kind_from_name(item["kind"].get<std::string>());
        const int width = item.value("width", 1);
        const std::int64_t count = item.value("count", std::int64_t{1});
        if (count < 1) throw domain_error("bom_from_json: count must be >= 1");
        bom.items.push_back(BomItem{Block(kind, width), count});
    }
    return bom;
}

inline nlohmann::json bom_to_json(const BillOfMaterials& bom) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& item : bom.items) {
        items.push_back({{"kind", block_kind_name(item.block.kind)},
                         {"width", item.block.width},
                         {"count", item.count}});
    }
    return nlohmann::json{{"label", bom.label}, {"items", items}};
}

inline BillOfMaterials load_bom(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("load_bom: cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw domain_error("load_bom: '" + path + "' is not valid JSON: " + e.what());
    }
    return bom_from_json(doc);
}

// ---------------------------------------------------------------------------
// LSTM fixtures: integer weights at the word scale, biases at the product
// scale, one input row per step.
// ---------------------------------------------------------------------------

struct LstmFixture {
    LstmOptions opt;
    int input_size = 0;
    int hidden_size = 0;
    DenseLayer gate_in, gate_forget, gate_out, gate_cand;
    std::vector<std::vector<Word>> steps;
};

namespace detail {

inline DenseLayer dense_from_json(const nlohmann::json& j, int r, int hidden, int fan_in,
                                  const std::string& name) {
    if (!j.contains("w") || !j["w"].is_array() || !j.contains("b") || !j["b"].is_array())
        throw domain_error("lstm fixture: gate '" + name + "' needs w and b arrays");
    DenseLayer layer;
    layer.r_w = r;
    layer.r_in = r;
    if (static_cast<int>(j["w"].size()) != hidden)
        throw domain_error("lstm fixture: gate '" + name + "' has " +
                           std::to_string(j["w"].size()) + " rows, expected " +
                           std::to_string(hidden));
    for (const auto& row : j["w"]) {
        if (static_cast<int>(row.size()) != fan_in)
            throw domain_error("lstm fixture: gate '" + name + "' row width " +
                               std::to_string(row.size()) + ", expected " +
                               std::to_string(fan_in));
        std::vector<Word> words;
        words.reserve(row.size());
        for (const auto& v : row) words.emplace_back(v.get<std::int64_t>(), r);
        layer.weights.push_back(std::move(words));
    }
    if (static_cast<int>(j["b"].size()) != hidden)
        throw domain_error("lstm fixture: gate '" + name + "' bias length mismatch");
    for (const auto& v : j["b"]) layer.bias.push_back(v.get<std::int64_t>());
    return layer;
}

} // namespace detail

inline LstmFixture load_lstm_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("load_lstm_fixture: cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw domain_error("load_lstm_fixture: '" + path + "' is not valid JSON: " + e.what());
    }

    LstmFixture fx;
    fx.opt.r = doc.value("r", 8);
    fx.opt.n = doc.value("n", std::int64_t{0});
    const std::string forget = doc.value("forget_path", std::string{"gated"});
    if (forget == "gated") {
        fx.opt.forget_multiply = false;
    } else if (forget == "multiply") {
        fx.opt.forget_multiply = true;
    } else {
        throw domain_error("load_lstm_fixture: forget_path must be 'gated' or 'multiply'");
    }
    fx.input_size = doc.value("input", 0);
    fx.hidden_size = doc.value("hidden", 0);
    if (fx.input_size < 1 || fx.hidden_size < 1)
        throw domain_error("load_lstm_fixture: need positive input and hidden sizes");
    if (!doc.contains("gates") || !doc["gates"].is_object())
        throw domain_error("load_lstm_fixture: missing gates object");

    const int fan_in = fx.input_size + fx.hidden_size;
    const auto& gates = doc["gates"];
    for (const char* name : {"input", "forget", "output", "candidate"})
        if (!gates.contains(name))
            throw domain_error("load_lstm_fixture: missing gate '" + std::string(name) + "'");
    fx.gate_in = detail::dense_from_json(gates["input"], fx.opt.r, fx.hidden_size, fan_in, "input");
    fx.gate_forget =
        detail::dense_from_json(gates["forget"], fx.opt.r, fx.hidden_size, fan_in, "forget");
    fx.gate_out =
        detail::dense_from_json(gates["output"], fx.opt.r, fx.hidden_size, fan_in, "output");
    fx.gate_cand =
        detail::dense_from_json(gates["candidate"], fx.opt.r, fx.hidden_size, fan_in, "candidate");

    if (!doc.contains("steps") || !doc["steps"].is_array())
        throw domain_error("load_lstm_fixture: missing steps array");
    for (const auto& row : doc["steps"]) {
        if (static_cast<int>(row.size()) != fx.input_size)
            throw domain_error("load_lstm_fixture: step width " + std::to_string(row.size()) +
                               ", expected " + std::to_string(fx.input_size));
        std::vector<Word> words;
        words.reserve(row.size());
        for (const auto& v : row) words.emplace_back(v.get<std::int64_t>(), fx.opt.r);
        fx.steps.push_back(std::move(words));
    }
    return fx;
}

inline LstmCellFixed make_fixed_cell(const LstmFixture& fx) {
    return LstmCellFixed(fx.opt, fx.gate_in, fx.gate_forget, fx.gate_out, fx.gate_cand);
}

} // namespace sqnl

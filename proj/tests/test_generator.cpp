#include <catch2/catch_amalgamated.hpp>

#include <sqnl/closed_form.hpp>
#include <sqnl/errors.hpp>
#include <sqnl/generator.hpp>

using namespace sqnl;

TEST_CASE("configuration is validated", "[generator]") {
    REQUIRE_NOTHROW(GeneratorConfig(8, 2));
    REQUIRE_NOTHROW(GeneratorConfig(8, 128));
    REQUIRE_THROWS_AS(GeneratorConfig(8, 1), domain_error);
    REQUIRE_THROWS_AS(GeneratorConfig(8, 6), domain_error);   // not a power of two
    REQUIRE_THROWS_AS(GeneratorConfig(8, 256), domain_error); // above 2^(R-1)
    REQUIRE_THROWS_AS(GeneratorConfig(3, 2), domain_error);
    REQUIRE_THROWS_AS(GeneratorConfig(8, 8, GeneratorMode::asymmetric(65)), domain_error);
    REQUIRE_THROWS_AS(GeneratorConfig(8, 8, GeneratorMode::asymmetric(-1)), domain_error);
    REQUIRE_THROWS_AS(GeneratorConfig(8, 8, GeneratorMode{ModeKind::Symmetric, 3}),
                      invariant_error);
}

TEST_CASE("midpoint-anchored sequences", "[generator]") {
    SECTION("symmetric, R=8 N=8: -56 to 56 step 16") {
        const Sequence s = make_sequence(GeneratorConfig(8, 8));
        REQUIRE(s.size() == 8);
        for (std::size_t k = 0; k < 8; ++k)
            REQUIRE(s.value(k) == Rational(-56 + 16 * static_cast<std::int64_t>(k)));
    }
    SECTION("symmetric, R=8 N=2: just the two midpoints") {
        const Sequence s = make_sequence(GeneratorConfig(8, 2));
        REQUIRE(s.doubled == std::vector<std::int64_t>{-64, 64});
    }
    SECTION("one-sided, R=8 N=8 alpha=0: -120 to -8") {
        const Sequence s = make_sequence(GeneratorConfig(8, 8, GeneratorMode::asymmetric(0)));
        for (std::size_t k = 0; k < 8; ++k)
            REQUIRE(s.value(k) == Rational(-120 + 16 * static_cast<std::int64_t>(k)));
    }
    SECTION("N = 2^(R-1) lands on half-units") {
        const Sequence s = make_sequence(GeneratorConfig(8, 128));
        REQUIRE(s.doubled.front() == -127); // value -63.5
        REQUIRE(s.doubled.back() == 127);
        for (std::int64_t d : s.doubled) REQUIRE(d % 2 != 0);
    }
    SECTION("midpoint sequences are balanced; endpoint-anchored ones are not") {
        const Sequence mid = make_sequence(GeneratorConfig(8, 8));
        std::int64_t sum = 0;
        for (std::int64_t d : mid.doubled) sum += d;
        REQUIRE(sum == 0);
        const Sequence end = make_sequence(GeneratorConfig(8, 8, GeneratorMode::symmetric(), true));
        REQUIRE(end.doubled.front() == -128); // starts on the rail itself
        sum = 0;
        for (std::int64_t d : end.doubled) sum += d;
        REQUIRE(sum != 0);
    }
}

TEST_CASE("spot outputs across the modes", "[generator]") {
    REQUIRE(eval(Word(0, 8), GeneratorConfig(8, 8)).value == 0);
    REQUIRE(eval(Word(-128, 8), GeneratorConfig(8, 128)).value == -64);
    REQUIRE(eval(Word(127, 8), GeneratorConfig(8, 128)).value == 63);
    REQUIRE(eval(Word(40, 8), GeneratorConfig(8, 128, GeneratorMode::gated()), 40).value == 24);
    REQUIRE(eval(Word(0, 8), GeneratorConfig(8, 8, GeneratorMode::log_sqnl())).value == 32);
    REQUIRE(eval(Word(100, 8), GeneratorConfig(8, 8, GeneratorMode::asymmetric(0))).value == 100);
    REQUIRE(eval(Word(0, 8), GeneratorConfig(8, 8, GeneratorMode::asymmetric(0))).value == 16);
}

TEST_CASE("eval argument errors", "[generator]") {
    const GeneratorConfig sym(8, 8);
    const GeneratorConfig gated(8, 8, GeneratorMode::gated());
    REQUIRE_THROWS_AS(eval(Word(0, 12), sym), domain_error);      // width mismatch
    REQUIRE_THROWS_AS(eval(Word(0, 8), sym, 10), domain_error);   // C outside gated mode
    REQUIRE_THROWS_AS(eval(Word(0, 8), gated), domain_error);     // gated needs C
    REQUIRE_THROWS_AS(eval(Word(0, 8), gated, 65), domain_error); // C above U_MAX
    REQUIRE_THROWS_AS(eval(Word(0, 8), gated, -1), domain_error);
}

TEST_CASE("rounded output is the floor of the exact average everywhere", "[generator]") {
    const std::vector<GeneratorConfig> cfgs = {
        GeneratorConfig(8, 8),
        GeneratorConfig(8, 32),
        GeneratorConfig(8, 8, GeneratorMode::log_sqnl()),
        GeneratorConfig(8, 8, GeneratorMode::asymmetric(16)),
        GeneratorConfig(8, 8, GeneratorMode::gated()),
    };
    for (const auto& cfg : cfgs) {
        const std::optional<std::int64_t> c =
            cfg.mode.kind == ModeKind::Gated ? std::optional<std::int64_t>(40) : std::nullopt;
        const MappingTable table = map_all(cfg, c);
        REQUIRE(table.entries.size() == 256);
        REQUIRE(table.cycles_per_activation == cfg.n);
        for (const auto& e : table.entries) {
            REQUIRE(e.f == e.exact.floor());
            REQUIRE(eval(Word(e.n, 8), cfg, c).value == e.f);
            REQUIRE(eval_exact(e.n, cfg, c) == e.exact);
        }
    }
}

TEST_CASE("outputs are monotone in the input", "[generator]") {
    const std::vector<GeneratorConfig> cfgs = {
        GeneratorConfig(8, 8),
        GeneratorConfig(8, 128),
        GeneratorConfig(8, 16, GeneratorMode::log_sqnl()),
        GeneratorConfig(8, 8, GeneratorMode::asymmetric(32)),
        GeneratorConfig(8, 64, GeneratorMode::gated()),
    };
    for (const auto& cfg : cfgs) {
        const std::optional<std::int64_t> c =
            cfg.mode.kind == ModeKind::Gated ? std::optional<std::int64_t>(25) : std::nullopt;
        const MappingTable table = map_all(cfg, c);
        for (std::size_t i = 1; i < table.entries.size(); ++i)
            REQUIRE(table.entries[i].f >= table.entries[i - 1].f);
    }
}

TEST_CASE("exact averages are odd in symmetric and gated modes", "[generator]") {
    const GeneratorConfig sym(8, 8);
    const GeneratorConfig gated(8, 16, GeneratorMode::gated());
    for (std::int64_t n = 0; n < 128; ++n) {
        REQUIRE(eval_exact(n, sym) == -eval_exact(-n, sym));
        REQUIRE(eval_exact(n, gated, 40) == -eval_exact(-n, gated, 40));
    }
}

TEST_CASE("at full sequence length the generator matches the analytic curve", "[generator]") {
    for (int r : {4, 6, 8, 10}) {
        const GeneratorConfig cfg(r, std::int64_t{1} << (r - 1));
        const MappingTable table = map_all(cfg);
        for (const auto& e : table.entries) REQUIRE(e.exact == sqnl_exact(e.n, r));
    }
}

TEST_CASE("gated mode at full length matches its curve, linear middle included", "[generator]") {
    const GeneratorConfig cfg(8, 128, GeneratorMode::gated());
    for (std::int64_t c : {std::int64_t{0}, std::int64_t{25}, std::int64_t{40}, std::int64_t{64}}) {
        const GatedParams p(8, c);
        const MappingTable table = map_all(cfg, c);
        for (const auto& e : table.entries) REQUIRE(e.exact == gated_exact(e.n, p));
        for (std::int64_t n = -p.delta; n <= std::min<std::int64_t>(p.delta, 127); ++n)
            REQUIRE(eval_exact(n, cfg, c) == Rational(n * c, p.u_max));
    }
}

TEST_CASE("plateaus saturate exactly", "[generator]") {
    const GeneratorConfig gated(8, 8, GeneratorMode::gated());
    REQUIRE(eval_exact(110, gated, 40) == Rational(40));
    REQUIRE(eval_exact(-110, gated, 40) == Rational(-40));
    const GeneratorConfig asym(8, 8, GeneratorMode::asymmetric(64));
    REQUIRE(eval_exact(-127, asym) == Rational(-64)); // pinned at -alpha
    const GeneratorConfig logc(8, 8, GeneratorMode::log_sqnl());
    REQUIRE(eval_exact(-128, logc) == Rational(0));
    // a short sequence grazes the very top of the range at n = 127
    REQUIRE(eval_exact(127, logc) == Rational(64));
}

TEST_CASE("log-variant outputs stay inside [0, 2^(R-2)]", "[generator]") {
    // Short sequences touch the upper endpoint 2^(R-2) itself; the
    // full-length mapping stays one step below it.
    const MappingTable coarse = map_all(GeneratorConfig(8, 16, GeneratorMode::log_sqnl()));
    for (const auto& e : coarse.entries) {
        REQUIRE(e.f >= 0);
        REQUIRE(e.f <= 64);
    }
    REQUIRE(coarse.entries.front().f == 0);
    REQUIRE(coarse.entries.back().f == 64);

    const MappingTable fine = map_all(GeneratorConfig(8, 128, GeneratorMode::log_sqnl()));
    for (const auto& e : fine.entries) {
        REQUIRE(e.f >= 0);
        REQUIRE(e.f <= 63);
    }
    REQUIRE(fine.entries.back().f == 63);
}

TEST_CASE("symmetric table spans the expected output range", "[generator]") {
    const MappingTable table = map_all(GeneratorConfig(8, 128));
    REQUIRE(table.entries.front().n == -128);
    REQUIRE(table.entries.back().n == 127);
    REQUIRE(table.entries.front().f == -64);
    REQUIRE(table.entries.back().f == 63);
}

#include <random>
#include <string>

#include "doctest.h"
#include "support/random_machine.hpp"
#include "tm2net/error.hpp"
#include "tm2net/machine.hpp"

using namespace tm2net;

namespace {

const char* kFlip = R"(# FLIP
states: q0 qH
symbols: _ 0 1          # first symbol is the blank
input: 0 1
start: q0
halt: qH
delta: q0 0 -> q0 1 R
delta: q0 1 -> q0 0 R
delta: q0 _ -> qH _ L
)";

ErrorCode code_of(const std::string& text) {
    try {
        parse_tm(text);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a parse error");
    return ErrorCode::Syntax;
}

SymbolId sym(const TuringMachine& m, const char* name) { return *m.find_symbol(name); }
StateId st(const TuringMachine& m, const char* name) { return *m.find_state(name); }

}  // namespace

TEST_CASE("FLIP fixture parses with declaration-order enumerations") {
    const TuringMachine m = parse_tm(kFlip);
    CHECK(m.n_states() == 2);
    CHECK(m.n_symbols() == 3);
    CHECK(st(m, "q0").value == 0);
    CHECK(st(m, "qH").value == 1);
    CHECK(sym(m, "_") == kBlank);
    CHECK(sym(m, "0").value == 1);
    CHECK(sym(m, "1").value == 2);
    CHECK(m.is_halt(st(m, "qH")));
    CHECK_FALSE(m.is_halt(st(m, "q0")));
    CHECK(m.delta(st(m, "qH"), kBlank) == std::nullopt);
    CHECK(*m.delta(st(m, "q0"), kBlank) == Action{st(m, "qH"), kBlank, Move::Left});
}

TEST_CASE("to_description round-trips through the parser") {
    const TuringMachine m = parse_tm(kFlip);
    const TuringMachine again = parse_tm(to_description(m));
    CHECK(again.states() == m.states());
    CHECK(again.symbols() == m.symbols());
    for (std::uint32_t q = 0; q < m.n_states(); ++q)
        for (std::uint32_t s = 0; s < m.n_symbols(); ++s)
            CHECK(again.delta(StateId{q}, SymbolId{s}) == m.delta(StateId{q}, SymbolId{s}));
}

TEST_CASE("parser reports validation errors") {
    const std::string head = "states: q0 qH\nsymbols: _ 0 1\ninput: 0 1\nstart: q0\nhalt: qH\n";
    const std::string rules = "delta: q0 0 -> q0 1 R\ndelta: q0 1 -> q0 0 R\ndelta: q0 _ -> qH _ L\n";

    CHECK(code_of(head + "delta: q0 0 -> q9 1 R\ndelta: q0 1 -> q0 0 R\ndelta: q0 _ -> qH _ L\n") ==
          ErrorCode::UndeclaredState);
    CHECK(code_of(head + "delta: q0 0 -> q0 7 R\ndelta: q0 1 -> q0 0 R\ndelta: q0 _ -> qH _ L\n") ==
          ErrorCode::UndeclaredSymbol);
    CHECK(code_of(head + rules + "delta: q0 0 -> q0 0 L\n") == ErrorCode::DuplicateTransition);
    CHECK(code_of(head + "delta: q0 0 -> q0 1 R\ndelta: q0 1 -> q0 0 R\n") == ErrorCode::MissingTransition);
    CHECK(code_of("states: q0 qH\nsymbols: _ 0 1\ninput: _ 0\nstart: q0\nhalt: qH\n" + rules) ==
          ErrorCode::BlankInInput);
    CHECK(code_of(head + rules + "delta: qH 0 -> q0 0 L\n") == ErrorCode::HaltStateTransition);
    CHECK(code_of(head + head) == ErrorCode::DuplicateDeclaration);
    CHECK(code_of("states: q0 q0\nsymbols: _\nstart: q0\n") == ErrorCode::DuplicateDeclaration);
    CHECK(code_of("symbols: _\nstart: q0\n") == ErrorCode::Syntax);
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parse_tm("states: q0 qH\nsymbols: _ 0\n\n  delta q0 0 -> qH 0 R\n");
        FAIL("expected syntax error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Syntax);
        CHECK(e.line() == 4);
        CHECK(e.column() == 3);
    }
    try {
        parse_tm("states: q0 qH\nsymbols: _ 0\nstart: q0\nhalt: qH\ndelta: q0 0 -> qH 0 X\ndelta: q0 _ -> qH 0 R\n");
        FAIL("expected syntax error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Syntax);
        CHECK(e.line() == 5);
        CHECK(e.column() == 21);
    }
}

TEST_CASE("a machine with no non-halt states needs no transitions") {
    const TuringMachine m = parse_tm("states: h\nsymbols: _ 1\ninput: 1\nstart: h\nhalt: h\n");
    CHECK(m.n_states() == 1);
    const TmTrace t = run_tm(m, initial_config(m, {}), 10);
    CHECK(t.configs.size() == 1);
    CHECK(t.status == RunStatus::Halted);
}

TEST_CASE("tm_step on FLIP") {
    const TuringMachine m = parse_tm(kFlip);
    const SymbolId zero = sym(m, "0"), one = sym(m, "1");
    const StateId q0 = st(m, "q0"), qh = st(m, "qH");

    const DottedSequence c0{q0, {}, {zero, one}};
    CHECK(tm_step(m, c0) == DottedSequence{q0, {one}, {one}});

    SUBCASE("halted configuration is rejected") {
        try {
            tm_step(m, DottedSequence{qh, {}, {zero}});
            FAIL("expected halted-configuration error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::HaltedConfiguration);
        }
    }
    SUBCASE("left move at the edge of the explicit tape reads a blank") {
        const DottedSequence edge{q0, {}, {}};
        const DottedSequence next = tm_step(m, edge);
        CHECK(next.state == qh);
        CHECK(next.left.empty());
        CHECK(next.right.empty());  // [blank, blank] canonicalizes away
    }
}

TEST_CASE("run_tm on FLIP") {
    const TuringMachine m = parse_tm(kFlip);
    const auto input = parse_word(m, "01");
    const TmTrace t = run_tm(m, initial_config(m, input), 10);
    REQUIRE(t.status == RunStatus::Halted);
    CHECK(t.steps() == 3);
    CHECK(format_tape(m, t.configs.back()) == "10");
    CHECK(format_dotted(m, t.configs.back()) == "1 qH . 0");

    const TmTrace none = run_tm(m, initial_config(m, input), 0);
    CHECK(none.configs.size() == 1);
    CHECK(none.status == RunStatus::Timeout);
}

TEST_CASE("initial_config") {
    const TuringMachine m = parse_tm(kFlip);
    CHECK(initial_config(m, parse_word(m, "01")) == DottedSequence{st(m, "q0"), {}, {sym(m, "0"), sym(m, "1")}});
    CHECK(initial_config(m, {}) == DottedSequence{st(m, "q0"), {}, {}});
    const std::vector<SymbolId> with_blank{sym(m, "0"), kBlank};
    CHECK_THROWS_AS(initial_config(m, with_blank), Error);
    CHECK_THROWS_AS(parse_word(m, "0_"), Error);
    CHECK(parse_word(m, "0 1 1").size() == 3);
}

TEST_CASE("property: canonicalize is idempotent and tm_step preserves well-typedness") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const TuringMachine m = testing::random_machine(rng);
        for (int k = 0; k < 20; ++k) {
            DottedSequence raw = testing::random_config(rng, m, 6);
            raw.right.push_back(kBlank);
            const DottedSequence c = canonicalize(raw);
            CHECK(canonicalize(c) == c);
            CHECK(is_canonical(c));
            if (m.is_halt(c.state)) continue;
            const DottedSequence n = tm_step(m, c);
            CHECK(is_canonical(n));
            CHECK_NOTHROW(check_config(m, n));
            CHECK(tm_step(m, c) == n);  // deterministic
        }
    }
}

TEST_CASE("property: run_tm trace entries are consecutive steps") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const TuringMachine m = testing::random_machine(rng);
        const std::size_t max_steps = 30;
        const TmTrace t = run_tm(m, initial_config(m, testing::random_word(rng, m, 6)), max_steps);
        CHECK(t.configs.size() <= max_steps + 1);
        for (std::size_t k = 1; k < t.configs.size(); ++k) CHECK(tm_step(m, t.configs[k - 1]) == t.configs[k]);
    }
}

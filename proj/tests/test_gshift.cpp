#include <random>

#include "doctest.h"
#include "support/random_machine.hpp"
#include "tm2net/gshift.hpp"
#include "tm2net/machine.hpp"

using namespace tm2net;

namespace {

TuringMachine flip() {
    return parse_tm(
        "states: q0 qH\nsymbols: _ 0 1\ninput: 0 1\nstart: q0\nhalt: qH\n"
        "delta: q0 0 -> q0 1 R\ndelta: q0 1 -> q0 0 R\ndelta: q0 _ -> qH _ L\n");
}

constexpr SymbolId B{0}, S0{1}, S1{2};
constexpr StateId Q0{0}, QH{1};

}  // namespace

TEST_CASE("build_gshift rows for FLIP") {
    const GeneralizedShift g = build_gshift(flip());
    CHECK(g.size() == 2 * 3 * 3);

    const GsRule& right = g.rule({B, Q0, S0});
    CHECK(right.shift == DotShift::Right);
    CHECK(right.replacement == std::array{GsSymbol::tape(B), GsSymbol::tape(S1), GsSymbol::state(Q0)});

    const GsRule& halt = g.rule({S0, QH, S1});
    CHECK(halt.shift == DotShift::None);
    CHECK(halt.replacement == std::array{GsSymbol::tape(S0), GsSymbol::state(QH), GsSymbol::tape(S1)});

    const GsRule& left = g.rule({S1, Q0, B});
    CHECK(left.shift == DotShift::Left);
    CHECK(left.replacement == std::array{GsSymbol::state(QH), GsSymbol::tape(S1), GsSymbol::tape(B)});
}

TEST_CASE("gs_step on FLIP") {
    const GeneralizedShift g = build_gshift(flip());
    CHECK(gs_step(g, {Q0, {}, {S0, S1}}) == DottedSequence{Q0, {S1}, {S1}});
    CHECK(gs_step(g, {Q0, {S1}, {S1}}) == DottedSequence{Q0, {S0, S1}, {}});
    const DottedSequence halted{QH, {S1}, {S0}};
    CHECK(gs_step(g, halted) == halted);
}

TEST_CASE("dump lists one tab-separated row per triple") {
    const std::string dump = dump_gshift(build_gshift(flip()));
    CHECK(dump.rfind("X\tq\tZ\tF\tG1\tG2\tG3\n", 0) == 0);
    CHECK(dump.find("_\tq0\t0\t1\t_\t1\tq0\n") != std::string::npos);
    CHECK(dump.find("1\tq0\t_\t-1\tqH\t1\t_\n") != std::string::npos);
    CHECK(std::count(dump.begin(), dump.end(), '\n') == 19);
}

TEST_CASE("property: GS emulates the TM on every DoD triple") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const TuringMachine m = testing::random_machine(rng);
        const GeneralizedShift g = build_gshift(m);
        for (const DodTriple& t : g.triples()) {
            for (int k = 0; k < 4; ++k) {
                const DottedSequence c = testing::random_config_with_dod(rng, m, t.left, t.state, t.head, 5);
                if (m.is_halt(c.state)) {
                    CHECK(gs_step(g, c) == c);
                } else {
                    CHECK(gs_step(g, c) == tm_step(m, c));
                    CHECK(gs_step(g, c) != c);  // halt configs are the only fixed points here
                }
            }
        }
    }
}

#include <random>

#include "doctest.h"
#include "support/oracles.hpp"
#include "support/random_machine.hpp"
#include "tm2net/encode.hpp"
#include "tm2net/error.hpp"
#include "tm2net/gshift.hpp"

using namespace tm2net;

namespace {

TuringMachine flip() {
    return parse_tm(
        "states: q0 qH\nsymbols: _ 0 1\ninput: 0 1\nstart: q0\nhalt: qH\n"
        "delta: q0 0 -> q0 1 R\ndelta: q0 1 -> q0 0 R\ndelta: q0 _ -> qH _ L\n");
}

constexpr SymbolId S0{1}, S1{2};
constexpr StateId Q0{0}, QH{1};

ErrorCode code_of(auto fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::Syntax;
}

}  // namespace

TEST_CASE("psi_x values for FLIP") {
    const TuringMachine m = flip();
    CHECK(psi_x(m, Q0, {}) == Rational(0));
    CHECK(psi_x(m, QH, {}) == Rational(1, 2));
    const std::vector<SymbolId> one{S1};
    CHECK(psi_x(m, Q0, one) == Rational(1, 3));
}

TEST_CASE("psi_y values for FLIP") {
    const TuringMachine m = flip();
    CHECK(psi_y(m, {}) == Rational(0));
    const std::vector<SymbolId> zero_one{S0, S1}, one{S1};
    CHECK(psi_y(m, zero_one) == Rational(5, 9));
    CHECK(psi_y(m, one) == Rational(2, 3));
}

TEST_CASE("decode inverts the FLIP examples") {
    const TuringMachine m = flip();
    CHECK(decode_x(m, Rational(1, 3)) == LeftPart{Q0, {S1}});
    CHECK(decode_x(m, Rational(0)) == LeftPart{Q0, {}});
    CHECK(decode_y(m, Rational(5, 9)) == std::vector<SymbolId>{S0, S1});
    CHECK(decode_y(m, Rational(0)).empty());
    CHECK(decode_y(m, Rational(2, 3)) == std::vector<SymbolId>{S1});
}

TEST_CASE("decode rejects values without a terminating expansion") {
    const TuringMachine m = flip();
    CHECK(code_of([&] { decode_x(m, Rational(1, 7)); }) == ErrorCode::NonTerminatingExpansion);
    CHECK(code_of([&] { decode_y(m, Rational(1, 7), 5); }) == ErrorCode::NonTerminatingExpansion);
    CHECK(code_of([&] { decode_y(m, Rational(1)); }) == ErrorCode::DigitOutOfRange);
    CHECK(code_of([&] { decode_x(m, Rational(-1, 3)); }) == ErrorCode::DigitOutOfRange);
    // 1/9 needs two digits: a bound of 1 is too tight, 2 suffices.
    CHECK(code_of([&] { decode_y(m, Rational(1, 9), 1); }) == ErrorCode::NonTerminatingExpansion);
    CHECK(decode_y(m, Rational(1, 9), 2).size() == 2);
}

TEST_CASE("godel is the plain radix code") {
    const std::vector<std::uint32_t> d{1, 0, 0};
    CHECK(godel(d, 2) == Rational(1, 2));
    const std::vector<std::uint32_t> e{1, 2};
    CHECK(godel(e, 3) == Rational(5, 9));
}

TEST_CASE("elementary affine maps") {
    CHECK(affine_substitute(Rational(1, 2), 1, 1, 0, 2) == Rational(0));
    CHECK(affine_substitute(Rational(0), 2, 0, 2, 3) == Rational(2, 9));
    CHECK(affine_substitute(Rational(5, 9), 1, 1, 2, 3) == Rational(8, 9));
    CHECK(affine_shift_left(Rational(1, 2), 1, 2) == Rational(0));
    CHECK(affine_shift_right(Rational(0), 2, 3) == Rational(2, 3));
    for (const Rational& v : {Rational(0), Rational(5, 9), Rational(26, 27)})
        CHECK(affine_shift_left(affine_shift_right(v, 2, 3), 2, 3) == v);
}

TEST_CASE("property: encode matches the power-sum oracle and round-trips") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const TuringMachine m = testing::random_machine(rng);
        for (int k = 0; k < 30; ++k) {
            const DottedSequence c = testing::random_config(rng, m, 10);
            const SymbologramPoint p = encode(m, c);
            CHECK(p == testing::encode_oracle(m, c));
            CHECK(p.x.sign() >= 0);
            CHECK(p.x < Rational(1));
            CHECK(p.y.sign() >= 0);
            CHECK(p.y < Rational(1));
            CHECK(decode(m, p) == c);
        }
    }
}

TEST_CASE("property: elementary-map algebra tracks single GS steps") {
    // Re-encoding after a symbolic step equals transforming the code with
    // the substitution and shift maps, for every triple.
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const TuringMachine m = testing::random_machine(rng);
        const GeneralizedShift g = build_gshift(m);
        for (const DodTriple& t : g.triples()) {
            if (m.is_halt(t.state)) continue;
            const DottedSequence c = testing::random_config_with_dod(rng, m, t.left, t.state, t.head, 6);
            const Branch b = testing::branch_from_elementary_maps(m, t);
            CHECK(b.apply(encode(m, c)) == encode(m, gs_step(g, c)));
        }
    }
}

#include <random>

#include "doctest.h"
#include "support/oracles.hpp"
#include "support/random_machine.hpp"
#include "tm2net/error.hpp"
#include "tm2net/nda.hpp"

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

TEST_CASE("FLIP partition") {
    const Partition p = build_partition(flip());
    CHECK(p.columns() == 6);
    CHECK(p.rows() == 3);
    CHECK(p.cell_count() == 18);
    for (std::size_t i = 0; i < p.columns(); ++i)
        CHECK(p.x_endpoints()[i + 1] - p.x_endpoints()[i] == Rational(1, 6));
    for (std::size_t j = 0; j < p.rows(); ++j) CHECK(p.y_endpoints()[j + 1] - p.y_endpoints()[j] == Rational(1, 3));
    CHECK(p.x_endpoints()[p.cell_of({B, Q0, B}).i] == Rational(0));
    CHECK(p.y_endpoints()[p.cell_of({B, Q0, S1}).j] == Rational(2, 3));
    // ξ for (q, X) is γ_q(q)/n_q + γ_s(X)/(n_q n_s)
    CHECK(p.x_endpoints()[p.cell_of({S0, QH, B}).i] == Rational(1, 2) + Rational(1, 6));
    for (std::size_t i = 0; i < p.columns(); ++i)
        for (std::size_t j = 0; j < p.rows(); ++j) CHECK(p.cell_of(p.triple_of({i, j})) == CellIndex{i, j});
}

TEST_CASE("derive_branch closed forms on FLIP") {
    const TuringMachine m = flip();
    SUBCASE("right move") {
        const Branch b = derive_branch(m, {B, Q0, S0});
        CHECK(b.lambda_x == Rational(1, 3));
        CHECK(b.a_x == Rational(1, 3));
        CHECK(b.lambda_y == Rational(3));
        CHECK(b.a_y == Rational(-1));
    }
    SUBCASE("left move") {
        const Branch b = derive_branch(m, {S1, Q0, B});
        CHECK(b.lambda_x == Rational(3));
        CHECK(b.a_x == Rational(-1, 2));
        // β gains two leading symbols and loses one: scaling 1/n_s.
        CHECK(b.lambda_y == Rational(1, 3));
        CHECK(b.a_y == Rational(2, 3));
    }
    SUBCASE("halt cells are the identity") {
        for (SymbolId x : {B, S0, S1})
            for (SymbolId z : {B, S0, S1}) CHECK(derive_branch(m, {x, QH, z}).is_identity());
    }
}

TEST_CASE("theta uses left-closed cells") {
    const Partition p = build_partition(flip());
    CHECK(theta(p, {Rational(0), Rational(0)}) == p.cell_of({B, Q0, B}));
    CHECK(theta(p, {Rational(1, 3), Rational(5, 9)}) == p.cell_of({S1, Q0, S0}));
    CHECK(theta(p, {Rational(1, 6), Rational(1, 3)}) == CellIndex{1, 1});
    CHECK(theta(p, {Rational(1, 6) - Rational(1, 1000), Rational(0)}) == CellIndex{0, 0});
    CHECK_THROWS_AS(theta(p, {Rational(1), Rational(0)}), Error);
    CHECK_THROWS_AS(theta(p, {Rational(0), Rational(-1, 2)}), Error);
}

TEST_CASE("nda_step follows the FLIP run") {
    const TuringMachine m = flip();
    const Nda n = build_nda(m);
    CHECK(nda_step(n, {Rational(0), Rational(5, 9)}) == SymbologramPoint{Rational(1, 3), Rational(2, 3)});
    CHECK(nda_step(n, {Rational(1, 3), Rational(2, 3)}) == encode(m, DottedSequence{Q0, {S0, S1}, {}}));
    CHECK(nda_step(n, {Rational(5, 18), Rational(0)}) == SymbologramPoint{Rational(5, 6), Rational(1, 3)});
    const SymbologramPoint halted{Rational(5, 6), Rational(1, 3)};
    CHECK(nda_step(n, halted) == halted);

    const NdaTrace t = run_nda(n, {Rational(0), Rational(5, 9)}, 10);
    CHECK(t.status == RunStatus::Halted);
    CHECK(t.steps() == 3);
    CHECK(orbit_csv(t).find("3,5/6,1/3,5,1\n") != std::string::npos);
}

TEST_CASE("branch oracles agree with the closed forms on every triple") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const TuringMachine m = testing::random_machine(rng);
        const Nda n = build_nda(m);
        for (const Branch& b : n.branches()) {
            const Branch oracle = testing::branch_from_elementary_maps(m, b.triple);
            CHECK(b.lambda_x == oracle.lambda_x);
            CHECK(b.a_x == oracle.a_x);
            CHECK(b.lambda_y == oracle.lambda_y);
            CHECK(b.a_y == oracle.a_y);
            CHECK(b.is_identity() == m.is_halt(b.triple.state));
        }
    }
}

TEST_CASE("property: commutativity, cell coherence and image containment") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const TuringMachine m = testing::random_machine(rng);
        const Nda n = build_nda(m);
        for (int k = 0; k < 40; ++k) {
            const DottedSequence c = testing::random_config(rng, m, 8);
            const SymbologramPoint p = encode(m, c);
            CHECK(theta(n.partition(), p) == n.partition().cell_of(dod_of(c)));
            const SymbologramPoint next = nda_step(n, p);
            if (m.is_halt(c.state)) {
                CHECK(next == p);
                continue;
            }
            CHECK(next == encode(m, tm_step(m, c)));
            CHECK(next.x.sign() >= 0);
            CHECK(next.x < Rational(1));
            CHECK(next.y.sign() >= 0);
            CHECK(next.y < Rational(1));
        }
    }
}

TEST_CASE("exports carry exact rationals and the cell ordering") {
    const Nda n = build_nda(flip());
    const std::string json = export_nda_json(n);
    CHECK(json.find("\"cell_order\"") != std::string::npos);
    CHECK(json.find("\"1/6\"") != std::string::npos);
    CHECK(json.find("\"-1/2\"") != std::string::npos);
    const std::string csv = export_nda_csv(n);
    CHECK(csv.find("2,0,1,q0,_,-1,-1/2,2/3,3/1,1/3\n") != std::string::npos);
}

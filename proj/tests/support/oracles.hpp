#pragma once

// Independent reference computations used to freeze and check expected
// values. Nothing here calls the closed forms or the Horner encoder.

#include <span>

#include "tm2net/encode.hpp"
#include "tm2net/machine.hpp"
#include "tm2net/nda.hpp"

namespace tm2net::testing {

/// ψ as an explicit power sum, digit by digit.
inline Rational power_sum(std::span<const SymbolId> digits, std::size_t base, const Rational& scale = Rational(1)) {
    Rational v;
    for (std::size_t k = 0; k < digits.size(); ++k)
        v += Rational(digits[k].value) / pow(Rational(static_cast<std::int64_t>(base)), static_cast<unsigned>(k + 1));
    return v * scale;
}

inline SymbologramPoint encode_oracle(const TuringMachine& m, const DottedSequence& c) {
    const Rational nq(static_cast<std::int64_t>(m.n_states()));
    const Rational x = Rational(c.state.value) / nq + power_sum(c.left, m.n_symbols(), Rational(1) / nq);
    return {x, power_sum(c.right, m.n_symbols())};
}

/// Affine map v -> scale·v + offset.
struct Affine {
    Rational scale{1};
    Rational offset;
    template <typename F>
    static Affine of(F f) {
        const Rational at0 = f(Rational(0));
        return {f(Rational(1)) - at0, at0};
    }
};

/// Branch parameters obtained by composing the elementary substitution and
/// shift maps on the two halves. ψ_x is handled by first stripping the state
/// digit (base n_q) and re-attaching the new one afterwards.
inline Branch branch_from_elementary_maps(const TuringMachine& m, const DodTriple& t) {
    Branch b;
    b.triple = t;
    b.action = m.delta(t.state, t.head);
    if (!b.action) return b;
    const auto nq = static_cast<std::uint32_t>(m.n_states());
    const auto ns = static_cast<std::uint32_t>(m.n_symbols());
    const std::uint32_t q = t.state.value, x = t.left.value, z = t.head.value;
    const std::uint32_t q2 = b.action->next.value, w = b.action->write.value;

    Affine fx, fy;
    if (b.action->move == Move::Right) {
        fx = Affine::of([&](const Rational& v) {
            const Rational tape = affine_shift_left(v, q, nq);
            return affine_shift_right(affine_shift_right(tape, w, ns), q2, nq);
        });
        fy = Affine::of([&](const Rational& v) { return affine_shift_left(v, z, ns); });
    } else {
        fx = Affine::of([&](const Rational& v) {
            const Rational tape = affine_shift_left(v, q, nq);
            return affine_shift_right(affine_shift_left(tape, x, ns), q2, nq);
        });
        fy = Affine::of([&](const Rational& v) {
            return affine_shift_right(affine_substitute(v, 1, z, w, ns), x, ns);
        });
    }
    b.lambda_x = fx.scale;
    b.a_x = fx.offset;
    b.lambda_y = fy.scale;
    b.a_y = fy.offset;
    return b;
}

}  // namespace tm2net::testing

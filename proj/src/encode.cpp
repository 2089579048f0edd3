#include "tm2net/encode.hpp"

#include "tm2net/error.hpp"

namespace tm2net {

namespace {

Rational base_of(std::size_t n) { return Rational(static_cast<std::int64_t>(n)); }

// Horner evaluation from the far end keeps every intermediate a plain radix code.
Rational tape_code(std::span<const SymbolId> tape, std::size_t base) {
    const Rational g = base_of(base);
    Rational v;
    for (auto it = tape.rbegin(); it != tape.rend(); ++it) v = (v + Rational(it->value)) / g;
    return v;
}

// Pulls the next digit off v in the given base; v keeps the remainder.
std::uint32_t next_digit(Rational& v, std::size_t base) {
    v *= base_of(base);
    const mpz_class d = v.floor();
    if (d < 0 || d >= static_cast<unsigned long>(base))
        throw Error(ErrorCode::DigitOutOfRange, "digit " + d.get_str() + " outside base " + std::to_string(base));
    v -= Rational(mpq_class(d));
    return static_cast<std::uint32_t>(d.get_ui());
}

std::vector<SymbolId> tape_digits(Rational v, std::size_t base, std::size_t bound) {
    std::vector<SymbolId> out;
    while (!v.is_zero()) {
        if (out.size() >= bound)
            throw Error(ErrorCode::NonTerminatingExpansion,
                        "no terminating base-" + std::to_string(base) + " expansion within " + std::to_string(bound) +
                            " digits");
        out.push_back(SymbolId{next_digit(v, base)});
    }
    return out;
}

void check_unit_interval(const Rational& v) {
    if (v.sign() < 0 || v >= Rational(1))
        throw Error(ErrorCode::DigitOutOfRange, v.to_string() + " is outside [0,1)");
}

}  // namespace

Rational godel(std::span<const std::uint32_t> digits, std::uint32_t base) {
    const Rational g(base);
    Rational v;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (*it >= base) throw Error(ErrorCode::DigitOutOfRange, "digit outside base");
        v = (v + Rational(*it)) / g;
    }
    return v;
}

Rational psi_x(const TuringMachine& m, StateId state, std::span<const SymbolId> tape) {
    return (Rational(state.value) + tape_code(tape, m.n_symbols())) / base_of(m.n_states());
}

Rational psi_y(const TuringMachine& m, std::span<const SymbolId> beta) { return tape_code(beta, m.n_symbols()); }

SymbologramPoint encode(const TuringMachine& m, const DottedSequence& c) {
    return {psi_x(m, c.state, c.left), psi_y(m, c.right)};
}

std::size_t default_digit_bound(const Rational& v) {
    return 64 * mpz_sizeinbase(v.raw().get_den_mpz_t(), 2);
}

LeftPart decode_x(const TuringMachine& m, const Rational& x, std::optional<std::size_t> digit_bound) {
    check_unit_interval(x);
    const std::size_t bound = digit_bound.value_or(default_digit_bound(x));
    Rational rest = x;
    const std::uint32_t q = next_digit(rest, m.n_states());
    return {StateId{q}, tape_digits(std::move(rest), m.n_symbols(), bound)};
}

std::vector<SymbolId> decode_y(const TuringMachine& m, const Rational& y, std::optional<std::size_t> digit_bound) {
    check_unit_interval(y);
    return tape_digits(y, m.n_symbols(), digit_bound.value_or(default_digit_bound(y)));
}

DottedSequence decode(const TuringMachine& m, const SymbologramPoint& p, std::optional<std::size_t> digit_bound) {
    LeftPart left = decode_x(m, p.x, digit_bound);
    return {left.state, std::move(left.tape), decode_y(m, p.y, digit_bound)};
}

Rational affine_substitute(const Rational& v, unsigned position, std::uint32_t old_digit, std::uint32_t new_digit,
                           std::uint32_t base) {
    const Rational scale = Rational(1) / pow(Rational(base), position);
    return v - Rational(old_digit) * scale + Rational(new_digit) * scale;
}

Rational affine_shift_left(const Rational& v, std::uint32_t first_digit, std::uint32_t base) {
    return Rational(base) * v - Rational(first_digit);
}

Rational affine_shift_right(const Rational& v, std::uint32_t new_digit, std::uint32_t base) {
    return v / Rational(base) + Rational(new_digit) / Rational(base);
}

}  // namespace tm2net

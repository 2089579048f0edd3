#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tm2net/machine.hpp"
#include "tm2net/rational.hpp"

namespace tm2net {

/// A machine configuration mapped into the unit square.
struct SymbologramPoint {
    Rational x;
    Rational y;
    friend bool operator==(const SymbologramPoint&, const SymbologramPoint&) = default;
};

/// The reversed left half α′: leading state, then tape symbols moving away
/// from the head.
struct LeftPart {
    StateId state;
    std::vector<SymbolId> tape;
    friend bool operator==(const LeftPart&, const LeftPart&) = default;
};

/// Plain radix code Σ digits[k]·base^-(k+1) of a finite digit string.
Rational godel(std::span<const std::uint32_t> digits, std::uint32_t base);

/// ψ_x: one base-n_q digit for the state, then base-n_s tape digits scaled by 1/n_q.
Rational psi_x(const TuringMachine& m, StateId state, std::span<const SymbolId> tape);
/// ψ_y: base-n_s digits of β.
Rational psi_y(const TuringMachine& m, std::span<const SymbolId> beta);

SymbologramPoint encode(const TuringMachine& m, const DottedSequence& c);

/// Digits allowed before an expansion counts as non-terminating:
/// 64 times the bit length of the denominator.
std::size_t default_digit_bound(const Rational& v);

/// Inverse of psi_x for values with a terminating expansion.
/// Throws Error(DigitOutOfRange) outside [0,1) and
/// Error(NonTerminatingExpansion) once `digit_bound` digits are exhausted.
LeftPart decode_x(const TuringMachine& m, const Rational& x, std::optional<std::size_t> digit_bound = std::nullopt);
std::vector<SymbolId> decode_y(const TuringMachine& m, const Rational& y,
                               std::optional<std::size_t> digit_bound = std::nullopt);
DottedSequence decode(const TuringMachine& m, const SymbologramPoint& p,
                      std::optional<std::size_t> digit_bound = std::nullopt);

// Elementary affine maps on Gödel codes. Positions are 1-based.

/// Replace the digit at position n: v − old·g^-n + new·g^-n.
Rational affine_substitute(const Rational& v, unsigned position, std::uint32_t old_digit, std::uint32_t new_digit,
                           std::uint32_t base);
/// Drop the leading digit d1: g·v − d1.
Rational affine_shift_left(const Rational& v, std::uint32_t first_digit, std::uint32_t base);
/// Prepend digit b: v/g + b/g.
Rational affine_shift_right(const Rational& v, std::uint32_t new_digit, std::uint32_t base);

}  // namespace tm2net

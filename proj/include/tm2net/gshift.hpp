#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tm2net/machine.hpp"

namespace tm2net {

/// A symbol of the combined alphabet A = Q ∪ N on which the Generalized
/// Shift acts: either a control state or a tape symbol.
struct GsSymbol {
    enum class Kind : std::uint8_t { Tape, State };
    Kind kind = Kind::Tape;
    std::uint32_t index = 0;

    static GsSymbol tape(SymbolId s) { return {Kind::Tape, s.value}; }
    static GsSymbol state(StateId q) { return {Kind::State, q.value}; }
    bool is_state() const { return kind == Kind::State; }
    friend bool operator==(const GsSymbol&, const GsSymbol&) = default;
};

/// Dot movement applied after substitution: -1 moves the dot one cell to the
/// left, +1 one cell to the right.
enum class DotShift : std::int8_t { Left = -1, None = 0, Right = 1 };

/// Domain of dependence: positions (-2, -1, 0) of the dotted sequence.
struct DodTriple {
    SymbolId left;   // X, position -2
    StateId state;   // q, position -1
    SymbolId head;   // Z, position 0
    friend bool operator==(const DodTriple&, const DodTriple&) = default;
};

struct GsRule {
    DotShift shift = DotShift::None;
    std::array<GsSymbol, 3> replacement;  // written over positions (-2, -1, 0)
};

class GeneralizedShift {
public:
    explicit GeneralizedShift(const TuringMachine& m);

    const TuringMachine& machine() const { return machine_; }
    const GsRule& rule(const DodTriple& t) const { return table_.at(index(t)); }
    std::size_t size() const { return table_.size(); }

    /// All DoD triples in table order: state-major, then left symbol, then head.
    std::vector<DodTriple> triples() const;

private:
    std::size_t index(const DodTriple& t) const;

    TuringMachine machine_;
    std::vector<GsRule> table_;
};

/// Reads the DoD triple of a configuration through the blank tails.
DodTriple dod_of(const DottedSequence& c);

GeneralizedShift build_gshift(const TuringMachine& m);

/// Ω(s) = σ^F(s ⊕ G(s)).
DottedSequence gs_step(const GeneralizedShift& g, const DottedSequence& c);

/// Tab-separated dump, one row per triple: X q Z F G1 G2 G3.
std::string dump_gshift(const GeneralizedShift& g);

}  // namespace tm2net

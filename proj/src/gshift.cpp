#include "tm2net/gshift.hpp"

#include <sstream>

#include "tm2net/error.hpp"

namespace tm2net {

GeneralizedShift::GeneralizedShift(const TuringMachine& m) : machine_(m) {
    table_.resize(m.n_states() * m.n_symbols() * m.n_symbols());
    for (const DodTriple& t : triples()) {
        GsRule& rule = table_[index(t)];
        const GsSymbol x = GsSymbol::tape(t.left);
        const auto& action = m.delta(t.state, t.head);
        if (!action) {
            rule = {DotShift::None, {x, GsSymbol::state(t.state), GsSymbol::tape(t.head)}};
        } else if (action->move == Move::Right) {
            rule = {DotShift::Right, {x, GsSymbol::tape(action->write), GsSymbol::state(action->next)}};
        } else {
            rule = {DotShift::Left, {GsSymbol::state(action->next), x, GsSymbol::tape(action->write)}};
        }
    }
}

std::size_t GeneralizedShift::index(const DodTriple& t) const {
    const std::size_t ns = machine_.n_symbols();
    if (t.state.value >= machine_.n_states() || t.left.value >= ns || t.head.value >= ns)
        throw Error(ErrorCode::OutOfRange, "DoD triple outside the machine's alphabet");
    return (t.state.value * ns + t.left.value) * ns + t.head.value;
}

std::vector<DodTriple> GeneralizedShift::triples() const {
    std::vector<DodTriple> out;
    out.reserve(table_.size());
    for (std::uint32_t q = 0; q < machine_.n_states(); ++q)
        for (std::uint32_t x = 0; x < machine_.n_symbols(); ++x)
            for (std::uint32_t z = 0; z < machine_.n_symbols(); ++z) out.push_back({SymbolId{x}, StateId{q}, SymbolId{z}});
    return out;
}

DodTriple dod_of(const DottedSequence& c) { return {symbol_at(c.left, 0), c.state, symbol_at(c.right, 0)}; }

GeneralizedShift build_gshift(const TuringMachine& m) { return GeneralizedShift(m); }

DottedSequence gs_step(const GeneralizedShift& g, const DottedSequence& c) {
    // Lay the finite part out left to right with one blank of margin on each
    // side, so the dot can move one cell without leaving the buffer.
    std::vector<GsSymbol> cells;
    const std::size_t left_len = std::max<std::size_t>(c.left.size(), 1) + 1;
    const std::size_t right_len = std::max<std::size_t>(c.right.size(), 1) + 1;
    cells.reserve(left_len + 1 + right_len);
    for (std::size_t k = left_len; k-- > 0;) cells.push_back(GsSymbol::tape(symbol_at(c.left, k)));
    cells.push_back(GsSymbol::state(c.state));
    for (std::size_t k = 0; k < right_len; ++k) cells.push_back(GsSymbol::tape(symbol_at(c.right, k)));
    std::size_t dot = left_len + 1;  // index of position 0

    const GsRule& rule = g.rule(dod_of(c));
    cells[dot - 2] = rule.replacement[0];
    cells[dot - 1] = rule.replacement[1];
    cells[dot] = rule.replacement[2];
    dot = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(dot) + static_cast<int>(rule.shift));

    DottedSequence out;
    const GsSymbol& state = cells[dot - 1];
    if (!state.is_state()) throw Error(ErrorCode::MalformedConfiguration, "shift image has no state left of the dot");
    out.state = StateId{state.index};
    for (std::size_t k = dot - 1; k-- > 0;) {
        if (cells[k].is_state()) throw Error(ErrorCode::MalformedConfiguration, "shift image has two states");
        out.left.push_back(SymbolId{cells[k].index});
    }
    for (std::size_t k = dot; k < cells.size(); ++k) {
        if (cells[k].is_state()) throw Error(ErrorCode::MalformedConfiguration, "shift image has two states");
        out.right.push_back(SymbolId{cells[k].index});
    }
    return canonicalize(std::move(out));
}

std::string dump_gshift(const GeneralizedShift& g) {
    const TuringMachine& m = g.machine();
    auto name = [&](const GsSymbol& s) {
        return s.is_state() ? m.state_name(StateId{s.index}) : m.symbol_name(SymbolId{s.index});
    };
    std::ostringstream os;
    os << "X\tq\tZ\tF\tG1\tG2\tG3\n";
    for (const DodTriple& t : g.triples()) {
        const GsRule& r = g.rule(t);
        os << m.symbol_name(t.left) << '\t' << m.state_name(t.state) << '\t' << m.symbol_name(t.head) << '\t'
           << static_cast<int>(r.shift) << '\t' << name(r.replacement[0]) << '\t' << name(r.replacement[1]) << '\t'
           << name(r.replacement[2]) << '\n';
    }
    return os.str();
}

}  // namespace tm2net

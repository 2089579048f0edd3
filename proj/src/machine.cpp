#include "tm2net/machine.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tm2net/error.hpp"

namespace tm2net {

TuringMachine::TuringMachine(std::vector<std::string> states, std::vector<std::string> symbols,
                             std::vector<SymbolId> input_symbols, StateId start, std::vector<StateId> halt_states,
                             std::vector<std::optional<Action>> delta)
    : states_(std::move(states)),
      symbols_(std::move(symbols)),
      input_(std::move(input_symbols)),
      start_(start),
      halt_(std::move(halt_states)),
      delta_(std::move(delta)) {
    if (states_.empty()) throw Error(ErrorCode::Syntax, "machine declares no states");
    if (symbols_.empty()) throw Error(ErrorCode::Syntax, "machine declares no tape symbols");
    if (start_.value >= states_.size()) throw Error(ErrorCode::UndeclaredState, "start state index out of range");
    if (delta_.size() != states_.size() * symbols_.size())
        throw Error(ErrorCode::MissingTransition, "transition table has wrong size");

    is_halt_.assign(states_.size(), false);
    for (StateId q : halt_) {
        if (q.value >= states_.size()) throw Error(ErrorCode::UndeclaredState, "halt state index out of range");
        is_halt_[q.value] = true;
    }
    for (SymbolId s : input_) {
        if (s == kBlank) throw Error(ErrorCode::BlankInInput, "blank '" + symbols_[0] + "' listed as input symbol");
        if (s.value >= symbols_.size()) throw Error(ErrorCode::UndeclaredSymbol, "input symbol index out of range");
    }
    for (std::uint32_t q = 0; q < states_.size(); ++q) {
        for (std::uint32_t s = 0; s < symbols_.size(); ++s) {
            const auto& a = delta_[q * symbols_.size() + s];
            if (is_halt_[q]) {
                if (a) throw Error(ErrorCode::HaltStateTransition, "halt state '" + states_[q] + "' has a transition");
                continue;
            }
            if (!a)
                throw Error(ErrorCode::MissingTransition,
                            "no transition for (" + states_[q] + ", " + symbols_[s] + ")");
            if (a->next.value >= states_.size())
                throw Error(ErrorCode::UndeclaredState, "transition target state index out of range");
            if (a->write.value >= symbols_.size())
                throw Error(ErrorCode::UndeclaredSymbol, "transition write symbol index out of range");
        }
    }
}

std::optional<StateId> TuringMachine::find_state(std::string_view name) const {
    auto it = std::find(states_.begin(), states_.end(), name);
    if (it == states_.end()) return std::nullopt;
    return StateId{static_cast<std::uint32_t>(it - states_.begin())};
}

std::optional<SymbolId> TuringMachine::find_symbol(std::string_view name) const {
    auto it = std::find(symbols_.begin(), symbols_.end(), name);
    if (it == symbols_.end()) return std::nullopt;
    return SymbolId{static_cast<std::uint32_t>(it - symbols_.begin())};
}

bool TuringMachine::is_input_symbol(SymbolId s) const {
    return std::find(input_.begin(), input_.end(), s) != input_.end();
}

DottedSequence canonicalize(DottedSequence c) {
    while (!c.left.empty() && c.left.back() == kBlank) c.left.pop_back();
    while (!c.right.empty() && c.right.back() == kBlank) c.right.pop_back();
    return c;
}

bool is_canonical(const DottedSequence& c) {
    return (c.left.empty() || c.left.back() != kBlank) && (c.right.empty() || c.right.back() != kBlank);
}

void check_config(const TuringMachine& m, const DottedSequence& c) {
    if (c.state.value >= m.n_states())
        throw Error(ErrorCode::MalformedConfiguration, "configuration state index out of range");
    auto bad = [&](SymbolId s) { return s.value >= m.n_symbols(); };
    if (std::any_of(c.left.begin(), c.left.end(), bad) || std::any_of(c.right.begin(), c.right.end(), bad))
        throw Error(ErrorCode::MalformedConfiguration, "configuration symbol index out of range");
}

// ---------------------------------------------------------------------------
// Machine-description parser

namespace {

struct Token {
    std::string text;
    std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line, std::size_t first_column) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.push_back({std::string(line.substr(start, i - start)), first_column + start});
    }
    return out;
}

struct RawTransition {
    std::vector<Token> tokens;  // q s -> q' s' M
    std::size_t line;
};

struct Declaration {
    std::vector<Token> tokens;
    std::size_t line = 0;
    bool present = false;
};

}  // namespace

TuringMachine parse_tm(std::string_view text) {
    std::map<std::string, Declaration, std::less<>> decls;
    for (const char* key : {"states", "symbols", "input", "start", "halt"}) decls[key] = {};
    std::vector<RawTransition> transitions;

    std::istringstream lines{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(lines, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        const auto first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos) continue;
        const auto colon = line.find(':');
        if (colon == std::string_view::npos)
            throw Error(ErrorCode::Syntax, "expected 'key: values'", line_no, first + 1);
        std::string_view key = line.substr(first, colon - first);
        while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.remove_suffix(1);
        auto tokens = tokenize(line.substr(colon + 1), colon + 2);

        if (key == "delta") {
            if (tokens.size() != 6 || tokens[2].text != "->") {
                const std::size_t col = tokens.size() > 2 && tokens[2].text != "->" ? tokens[2].column : colon + 2;
                throw Error(ErrorCode::Syntax, "expected 'delta: q s -> q' s' L|R'", line_no, col);
            }
            if (tokens[5].text != "L" && tokens[5].text != "R")
                throw Error(ErrorCode::Syntax, "move must be L or R, got '" + tokens[5].text + "'", line_no,
                            tokens[5].column);
            transitions.push_back({std::move(tokens), line_no});
            continue;
        }
        auto it = decls.find(key);
        if (it == decls.end())
            throw Error(ErrorCode::Syntax, "unknown key '" + std::string(key) + "'", line_no, first + 1);
        if (it->second.present)
            throw Error(ErrorCode::DuplicateDeclaration, "key '" + std::string(key) + "' declared twice", line_no,
                        first + 1);
        if (key == "start" && tokens.size() != 1)
            throw Error(ErrorCode::Syntax, "'start' takes exactly one state", line_no, colon + 2);
        it->second = {std::move(tokens), line_no, true};
    }

    for (const char* key : {"states", "symbols", "start"})
        if (!decls[key].present) throw Error(ErrorCode::Syntax, std::string("missing '") + key + "' declaration");

    auto unique_names = [](const Declaration& d) {
        std::vector<std::string> names;
        for (const auto& t : d.tokens) {
            if (std::find(names.begin(), names.end(), t.text) != names.end())
                throw Error(ErrorCode::DuplicateDeclaration, "'" + t.text + "' declared twice", d.line, t.column);
            names.push_back(t.text);
        }
        return names;
    };
    std::vector<std::string> states = unique_names(decls["states"]);
    std::vector<std::string> symbols = unique_names(decls["symbols"]);
    if (states.empty()) throw Error(ErrorCode::Syntax, "no states declared", decls["states"].line);
    if (symbols.empty()) throw Error(ErrorCode::Syntax, "no tape symbols declared", decls["symbols"].line);

    auto state_of = [&](const Token& t, std::size_t line) {
        auto it = std::find(states.begin(), states.end(), t.text);
        if (it == states.end()) throw Error(ErrorCode::UndeclaredState, "'" + t.text + "'", line, t.column);
        return StateId{static_cast<std::uint32_t>(it - states.begin())};
    };
    auto symbol_of = [&](const Token& t, std::size_t line) {
        auto it = std::find(symbols.begin(), symbols.end(), t.text);
        if (it == symbols.end()) throw Error(ErrorCode::UndeclaredSymbol, "'" + t.text + "'", line, t.column);
        return SymbolId{static_cast<std::uint32_t>(it - symbols.begin())};
    };

    std::vector<SymbolId> input;
    for (const auto& t : decls["input"].tokens) {
        const SymbolId s = symbol_of(t, decls["input"].line);
        if (s == kBlank)
            throw Error(ErrorCode::BlankInInput, "blank '" + t.text + "' in input alphabet", decls["input"].line,
                        t.column);
        if (std::find(input.begin(), input.end(), s) != input.end())
            throw Error(ErrorCode::DuplicateDeclaration, "'" + t.text + "' declared twice", decls["input"].line,
                        t.column);
        input.push_back(s);
    }
    const StateId start = state_of(decls["start"].tokens.front(), decls["start"].line);
    std::vector<StateId> halt;
    std::set<std::uint32_t> halt_set;
    for (const auto& t : decls["halt"].tokens) {
        const StateId q = state_of(t, decls["halt"].line);
        if (!halt_set.insert(q.value).second)
            throw Error(ErrorCode::DuplicateDeclaration, "'" + t.text + "' declared twice", decls["halt"].line,
                        t.column);
        halt.push_back(q);
    }

    std::vector<std::optional<Action>> delta(states.size() * symbols.size());
    for (const auto& tr : transitions) {
        const StateId q = state_of(tr.tokens[0], tr.line);
        const SymbolId s = symbol_of(tr.tokens[1], tr.line);
        const StateId next = state_of(tr.tokens[3], tr.line);
        const SymbolId write = symbol_of(tr.tokens[4], tr.line);
        const Move move = tr.tokens[5].text == "L" ? Move::Left : Move::Right;
        if (halt_set.count(q.value))
            throw Error(ErrorCode::HaltStateTransition, "halt state '" + tr.tokens[0].text + "' has a transition",
                        tr.line, tr.tokens[0].column);
        auto& slot = delta[q.value * symbols.size() + s.value];
        if (slot)
            throw Error(ErrorCode::DuplicateTransition,
                        "(" + tr.tokens[0].text + ", " + tr.tokens[1].text + ") defined twice", tr.line,
                        tr.tokens[0].column);
        slot = Action{next, write, move};
    }
    for (std::uint32_t q = 0; q < states.size(); ++q) {
        if (halt_set.count(q)) continue;
        for (std::uint32_t s = 0; s < symbols.size(); ++s)
            if (!delta[q * symbols.size() + s])
                throw Error(ErrorCode::MissingTransition, "no transition for (" + states[q] + ", " + symbols[s] + ")");
    }
    return TuringMachine(std::move(states), std::move(symbols), std::move(input), start, std::move(halt),
                         std::move(delta));
}

TuringMachine load_tm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_tm(buf.str());
}

// ---------------------------------------------------------------------------
// Execution

DottedSequence tm_step(const TuringMachine& m, const DottedSequence& c) {
    if (m.is_halt(c.state))
        throw Error(ErrorCode::HaltedConfiguration, "state '" + m.state_name(c.state) + "' is a halt state");
    const SymbolId head = symbol_at(c.right, 0);
    const Action& a = *m.delta(c.state, head);

    DottedSequence next;
    next.state = a.next;
    if (a.move == Move::Right) {
        next.left.reserve(c.left.size() + 1);
        next.left.push_back(a.write);
        next.left.insert(next.left.end(), c.left.begin(), c.left.end());
        if (c.right.size() > 1) next.right.assign(c.right.begin() + 1, c.right.end());
    } else {
        const SymbolId x = symbol_at(c.left, 0);
        if (c.left.size() > 1) next.left.assign(c.left.begin() + 1, c.left.end());
        next.right.reserve(c.right.size() + 2);
        next.right.push_back(x);
        next.right.push_back(a.write);
        if (c.right.size() > 1) next.right.insert(next.right.end(), c.right.begin() + 1, c.right.end());
    }
    return canonicalize(std::move(next));
}

DottedSequence initial_config(const TuringMachine& m, std::span<const SymbolId> input) {
    for (SymbolId s : input)
        if (!m.is_input_symbol(s))
            throw Error(ErrorCode::IllegalInputSymbol,
                        "'" + (s.value < m.n_symbols() ? m.symbol_name(s) : std::to_string(s.value)) +
                            "' is not an input symbol");
    return canonicalize(DottedSequence{m.start(), {}, {input.begin(), input.end()}});
}

std::vector<SymbolId> parse_word(const TuringMachine& m, std::string_view word) {
    std::vector<std::string> parts;
    const bool spaced = word.find_first_of(" \t") != std::string_view::npos;
    if (spaced) {
        for (auto& t : tokenize(word, 1)) parts.push_back(std::move(t.text));
    } else {
        for (char ch : word) parts.emplace_back(1, ch);
    }
    std::vector<SymbolId> out;
    for (const auto& p : parts) {
        auto s = m.find_symbol(p);
        if (!s) throw Error(ErrorCode::IllegalInputSymbol, "'" + p + "' is not a tape symbol");
        if (!m.is_input_symbol(*s)) throw Error(ErrorCode::IllegalInputSymbol, "'" + p + "' is not an input symbol");
        out.push_back(*s);
    }
    return out;
}

TmTrace run_tm(const TuringMachine& m, DottedSequence c0, std::size_t max_steps) {
    TmTrace trace;
    trace.configs.push_back(canonicalize(std::move(c0)));
    while (true) {
        const DottedSequence& cur = trace.configs.back();
        if (m.is_halt(cur.state)) {
            trace.status = RunStatus::Halted;
            break;
        }
        if (trace.steps() >= max_steps) {
            trace.status = RunStatus::Timeout;
            break;
        }
        trace.configs.push_back(tm_step(m, cur));
    }
    return trace;
}

namespace {

std::string join_symbols(const TuringMachine& m, const std::vector<SymbolId>& syms) {
    const bool single_char =
        std::all_of(m.symbols().begin(), m.symbols().end(), [](const std::string& s) { return s.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < syms.size(); ++i) {
        if (i != 0 && !single_char) out += ' ';
        out += m.symbol_name(syms[i]);
    }
    return out;
}

}  // namespace

std::string format_tape(const TuringMachine& m, const DottedSequence& c) {
    std::vector<SymbolId> tape(c.left.rbegin(), c.left.rend());
    tape.insert(tape.end(), c.right.begin(), c.right.end());
    auto first = std::find_if(tape.begin(), tape.end(), [](SymbolId s) { return s != kBlank; });
    auto last = std::find_if(tape.rbegin(), tape.rend(), [](SymbolId s) { return s != kBlank; }).base();
    if (first >= last) return {};
    return join_symbols(m, {first, last});
}

std::string format_dotted(const TuringMachine& m, const DottedSequence& c) {
    std::string out;
    for (auto it = c.left.rbegin(); it != c.left.rend(); ++it) out += m.symbol_name(*it) + " ";
    out += m.state_name(c.state) + " .";
    for (SymbolId s : c.right) out += " " + m.symbol_name(s);
    return out;
}

std::string to_description(const TuringMachine& m) {
    std::ostringstream os;
    auto list = [&](const char* key, const auto& items, auto name) {
        os << key << ':';
        for (const auto& x : items) os << ' ' << name(x);
        os << '\n';
    };
    list("states", m.states(), [](const std::string& s) { return s; });
    list("symbols", m.symbols(), [](const std::string& s) { return s; });
    list("input", m.input_symbols(), [&](SymbolId s) { return m.symbol_name(s); });
    os << "start: " << m.state_name(m.start()) << '\n';
    list("halt", m.halt_states(), [&](StateId q) { return m.state_name(q); });
    for (std::uint32_t q = 0; q < m.n_states(); ++q) {
        for (std::uint32_t s = 0; s < m.n_symbols(); ++s) {
            const auto& a = m.delta(StateId{q}, SymbolId{s});
            if (!a) continue;
            os << "delta: " << m.states()[q] << ' ' << m.symbols()[s] << " -> " << m.state_name(a->next) << ' '
               << m.symbol_name(a->write) << ' ' << (a->move == Move::Left ? 'L' : 'R') << '\n';
        }
    }
    return os.str();
}

}  // namespace tm2net

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tm2net {

/// Index of a control state in declaration order (this is γ_q).
struct StateId {
    std::uint32_t value = 0;
    friend auto operator<=>(const StateId&, const StateId&) = default;
};

/// Index of a tape symbol in declaration order (this is γ_s; blank is 0).
struct SymbolId {
    std::uint32_t value = 0;
    friend auto operator<=>(const SymbolId&, const SymbolId&) = default;
};

inline constexpr SymbolId kBlank{0};

enum class Move { Left, Right };

struct Action {
    StateId next;
    SymbolId write;
    Move move;
    friend bool operator==(const Action&, const Action&) = default;
};

class TuringMachine {
public:
    /// Validates everything the machine-description format requires and
    /// throws Error on the first violation. `delta` may hold std::nullopt
    /// only for halt states; it is indexed by state * n_symbols + symbol.
    TuringMachine(std::vector<std::string> states, std::vector<std::string> symbols,
                  std::vector<SymbolId> input_symbols, StateId start, std::vector<StateId> halt_states,
                  std::vector<std::optional<Action>> delta);

    std::size_t n_states() const { return states_.size(); }
    std::size_t n_symbols() const { return symbols_.size(); }

    const std::vector<std::string>& states() const { return states_; }
    const std::vector<std::string>& symbols() const { return symbols_; }
    const std::vector<SymbolId>& input_symbols() const { return input_; }
    const std::vector<StateId>& halt_states() const { return halt_; }
    StateId start() const { return start_; }

    const std::string& state_name(StateId q) const { return states_.at(q.value); }
    const std::string& symbol_name(SymbolId s) const { return symbols_.at(s.value); }
    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<SymbolId> find_symbol(std::string_view name) const;

    bool is_halt(StateId q) const { return is_halt_.at(q.value); }
    bool is_input_symbol(SymbolId s) const;

    /// δ(q, s); std::nullopt exactly when q is a halt state.
    const std::optional<Action>& delta(StateId q, SymbolId s) const {
        return delta_.at(q.value * symbols_.size() + s.value);
    }

private:
    std::vector<std::string> states_;
    std::vector<std::string> symbols_;
    std::vector<SymbolId> input_;
    StateId start_;
    std::vector<StateId> halt_;
    std::vector<bool> is_halt_;
    std::vector<std::optional<Action>> delta_;
};

/// Machine configuration as a dotted sequence α′.β. `left` holds α′ without
/// its leading state (α′[2..]), nearest-to-head first; `right` is β with the
/// head symbol first. Both carry implicit infinite blank tails.
struct DottedSequence {
    StateId state;
    std::vector<SymbolId> left;
    std::vector<SymbolId> right;

    friend bool operator==(const DottedSequence&, const DottedSequence&) = default;
};

/// Drops trailing explicit blanks from both halves.
DottedSequence canonicalize(DottedSequence c);
bool is_canonical(const DottedSequence& c);

/// Symbol at position k (0-based) of a half, reading through the blank tail.
inline SymbolId symbol_at(std::span<const SymbolId> half, std::size_t k) {
    return k < half.size() ? half[k] : kBlank;
}

/// Throws Error(MalformedConfiguration) when c references states or symbols
/// outside m.
void check_config(const TuringMachine& m, const DottedSequence& c);

TuringMachine parse_tm(std::string_view text);
TuringMachine load_tm(const std::string& path);

/// One application of δ̂. Throws Error(HaltedConfiguration) on a halt state.
DottedSequence tm_step(const TuringMachine& m, const DottedSequence& c);

DottedSequence initial_config(const TuringMachine& m, std::span<const SymbolId> input);

/// Splits an input word into symbols: whitespace-separated tokens when the
/// word contains whitespace, otherwise one symbol per character.
std::vector<SymbolId> parse_word(const TuringMachine& m, std::string_view word);

enum class RunStatus { Halted, Timeout };

struct TmTrace {
    std::vector<DottedSequence> configs;
    RunStatus status = RunStatus::Timeout;
    std::size_t steps() const { return configs.empty() ? 0 : configs.size() - 1; }
};

TmTrace run_tm(const TuringMachine& m, DottedSequence c0, std::size_t max_steps);

/// Tape contents left to right with blanks trimmed from both ends.
std::string format_tape(const TuringMachine& m, const DottedSequence& c);
/// Human-readable dotted form, e.g. "1 qH . 0".
std::string format_dotted(const TuringMachine& m, const DottedSequence& c);

/// Re-emits a machine in the description format (round-trips through parse_tm).
std::string to_description(const TuringMachine& m);

}  // namespace tm2net

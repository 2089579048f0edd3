#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tm2net {

enum class ErrorCode {
    Syntax,
    UndeclaredState,
    UndeclaredSymbol,
    DuplicateDeclaration,
    DuplicateTransition,
    MissingTransition,
    HaltStateTransition,
    BlankInInput,
    IllegalInputSymbol,
    HaltedConfiguration,
    MalformedConfiguration,
    NonTerminatingExpansion,
    DigitOutOfRange,
    OutOfRange,
    DegenerateMachine,
    MalformedDocument,
    InconsistentNetwork,
    WeightOffValueSet,
};

const char* to_string(ErrorCode code) noexcept;

// Single exception type for the whole pipeline; `code()` distinguishes causes.
// `line()`/`column()` are 1-based and 0 when not applicable.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::size_t line = 0, std::size_t column = 0);

    ErrorCode code() const noexcept { return code_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    ErrorCode code_;
    std::size_t line_;
    std::size_t column_;
};

}  // namespace tm2net

#include "tm2net/error.hpp"

namespace tm2net {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Syntax: return "syntax error";
        case ErrorCode::UndeclaredState: return "undeclared state";
        case ErrorCode::UndeclaredSymbol: return "undeclared symbol";
        case ErrorCode::DuplicateDeclaration: return "duplicate declaration";
        case ErrorCode::DuplicateTransition: return "duplicate transition";
        case ErrorCode::MissingTransition: return "missing transition";
        case ErrorCode::HaltStateTransition: return "transition from halt state";
        case ErrorCode::BlankInInput: return "blank in input alphabet";
        case ErrorCode::IllegalInputSymbol: return "illegal input symbol";
        case ErrorCode::HaltedConfiguration: return "halted configuration";
        case ErrorCode::MalformedConfiguration: return "malformed configuration";
        case ErrorCode::NonTerminatingExpansion: return "non-terminating expansion";
        case ErrorCode::DigitOutOfRange: return "digit out of range";
        case ErrorCode::OutOfRange: return "out of range";
        case ErrorCode::DegenerateMachine: return "degenerate machine";
        case ErrorCode::MalformedDocument: return "malformed document";
        case ErrorCode::InconsistentNetwork: return "inconsistent network";
        case ErrorCode::WeightOffValueSet: return "weight off permitted value set";
    }
    return "unknown error";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message, std::size_t line, std::size_t column) {
    std::string out = to_string(code);
    if (line != 0) {
        out += " at line " + std::to_string(line);
        if (column != 0) out += ", column " + std::to_string(column);
    }
    out += ": " + message;
    return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(decorate(code, message, line, column)), code_(code), line_(line), column_(column) {}

}  // namespace tm2net

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dichro {

enum class ErrorKind {
    CyclicInput,
    ArityMismatch,
    OutOfRange,
    BudgetExceeded,
    NotAFeedbackSet,
    TooLarge,
    PreconditionViolated,
    DegreeTooHigh,
    WrongFvsSize,
    TooManyArcs,
    InvalidDecomposition,
    ClauseTooLarge,
    InvalidClause,
    NotRestricted,
    VariablePolarityMissing,
    EmptyClause,
    GroupSizeInfeasible,
    ImproperColoring,
    SyntaxError,
    SelfLoop,
    DuplicateArc,
};

std::string_view to_string(ErrorKind kind);

// Every recoverable failure in the library is reported through this type.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace dichro

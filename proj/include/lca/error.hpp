#pragma once

#include <stdexcept>
#include <string>

namespace lca {

enum class ErrorKind {
    EmptyInput,
    DuplicateRank,
    RankOutOfRange,
    EmptySubset,
    ElementOutOfRange,
    NotSubdiagonal,
    InconsistentPair,
    SizeMismatch,
    MetricKindMismatch,
    EmptySample,
    MixedKinds,
    InvalidPhi,
    TooLarge,
    RegimeViolated,
    ConditionViolated,
    ParseError,
    InconsistentN,
    FormatError,
    SelectionInfeasible,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace lca

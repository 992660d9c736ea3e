#pragma once

#include <stdexcept>
#include <string>

namespace vex {

// Numeric values mirror vex_status in include/vex/vex.h.
enum class ErrorCode : int {
    InvalidArgument = 1,
    GridTooSmall = 2,
    GridMismatch = 3,
    OutOfDomain = 4,
    SolverFailure = 5,
    OrderViolation = 6,
    DomainError = 7,
    SupportViolation = 8,
    HypothesisViolation = 9,
    EmptyCorpus = 10,
    NoValidPairs = 11,
    SyntaxError = 12,
    UnknownIdentifier = 13,
    DimensionError = 14,
    EvalError = 15,
    FormatError = 16,
    IoError = 17,
};

const char* errorCodeName(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(errorCodeName(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace vex

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ultraplanar {

enum class ErrorKind {
    InvalidInput,
    EulerViolation,
    Disconnected,
    BridgeDetected,
    LengthMismatch,
    NoPerfectMatching,
    NotTriangulated,
    ParityError,
    NonIncreasingSchedule,
    InvalidHierarchy,
    Infeasible,
    Unbounded,
    IterationLimit,
    PoolColumnInvalid,
    TooLarge,
    BadDimensions,
    Internal,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Errors caused by the caller's data rather than by a bug in the library.
bool is_input_error(ErrorKind kind);

}  // namespace ultraplanar

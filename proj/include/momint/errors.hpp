#pragma once

#include <stdexcept>
#include <string>

namespace momint {

// Runtime numerical failures. The CLI maps this family to exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OverflowError : NumericalError {
    using NumericalError::NumericalError;
};

struct ConvergenceError : NumericalError {
    using NumericalError::NumericalError;
};

struct NoNotchError : NumericalError {
    using NumericalError::NumericalError;
};

struct AmbiguousNotchError : NumericalError {
    using NumericalError::NumericalError;
};

struct NoPeakError : NumericalError {
    using NumericalError::NumericalError;
};

// Caller-side contract violations (bad arguments, bad configuration).
// The CLI maps this family to exit code 2.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct GridError : DomainError {
    using DomainError::DomainError;
};

struct ConfigError : DomainError {
    using DomainError::DomainError;
};

}  // namespace momint

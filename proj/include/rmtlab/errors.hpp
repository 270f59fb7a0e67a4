#pragma once

#include <stdexcept>
#include <string>

namespace rmtlab {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Evaluation at (or numerically on top of) a pole or singular point.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A numerical procedure did not reach its requested accuracy, or a
/// consistency assertion between two computational routes failed.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid command-line or configuration input.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace rmtlab

#pragma once

#include <stdexcept>

namespace pdsearch {

/// Register or circuit width outside the supported range.
class SizeError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// Mismatched dimensions between two operands.
class ShapeError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Value outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A structural property that should hold by construction was violated.
/// Seeing this means a bug in the producing code, not bad user input.
class InvariantError : public ShapeError {
  public:
    using ShapeError::ShapeError;
};

}  // namespace pdsearch

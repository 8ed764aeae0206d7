#pragma once

#include <stdexcept>
#include <string>

namespace mimo {

// Base of every error the library throws. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters or configuration (unsupported modulation, bad flags, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Operand dimensions do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A value is outside the domain of a mapping (e.g. a symbol that is not in the alphabet).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Non-finite or otherwise unusable floating-point input.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Rank deficiency or a non positive-definite pivot.
class SingularityError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Iterative inversion residual kept growing.
class DivergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

// A documented precondition of an approximation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace mimo

#pragma once

#include <stdexcept>
#include <string>

namespace liebih {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands have incompatible shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input violates a mathematical precondition (non-PD metric, Jacobi
/// failure, subspace not closed under the bracket, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Two independent formulas for the same quantity disagree. This always
/// signals a bug, never a property of the input.
class OracleMismatch : public Error {
 public:
  using Error::Error;
};

/// A search or linear system has no solution within tolerance.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace liebih

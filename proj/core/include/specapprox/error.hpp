#pragma once

#include <stdexcept>
#include <string>

namespace specapprox {

/// Raised when an input violates a precondition (bad spectrum, bad grid,
/// malformed config). Maps to CLI exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation cannot produce a meaningful number: a series or
/// supremum that does not settle, a degenerate regression, a singular solve.
/// Maps to CLI exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace specapprox

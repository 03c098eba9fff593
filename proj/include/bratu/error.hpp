#pragma once

#include <stdexcept>
#include <string>

namespace bratu {

/// Bad input: wrong sizes, out-of-range parameters, malformed grids.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for failures that come from the numerics rather than the caller.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrix : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Iterative kernel (eigen-solver, root finder) ran out of budget.
class NumericalFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The parameter lies outside the region where solutions exist.
class NoSolution : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Nonlinearity evaluated at a pole (Gelfand variant with 1 + eps*u <= 0).
class SingularNonlinearity : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bratu

#pragma once

#include <stdexcept>
#include <string>

namespace koszul {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: bad parameters, unparsable files, mixed fields.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Two maps that should compose to zero do not (an upstream wiring bug).
class ComplexError : public Error {
 public:
  using Error::Error;
};

/// A structural identity that must hold by construction failed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Parameters outside the range where an operation is defined.
class RangeError : public InputError {
 public:
  using InputError::InputError;
};

/// Exhaustive enumeration would exceed the configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An ideal element could not be expressed through the chosen generators.
class LiftError : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

}  // namespace koszul

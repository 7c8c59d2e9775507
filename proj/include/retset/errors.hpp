#pragma once

#include <stdexcept>
#include <string>

namespace retset {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};

/// Denominator vanished at the chosen image of t; caller retries with a fresh point.
struct BadSpecialization : Error {
  using Error::Error;
};

/// A computation would exceed a size limit (dense degree, expansion, period search).
struct ResourceError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct FieldMismatch : Error {
  using Error::Error;
};

/// A set-membership question could not be certified either way.
struct UndecidedError : Error {
  using Error::Error;
};

/// A set term violates its defining constraints.
struct InvalidTerm : DomainError {
  using DomainError::DomainError;
};

/// A window fit produced no decomposition consistent with the certification window.
struct FitFailure : Error {
  using Error::Error;
};

}  // namespace retset

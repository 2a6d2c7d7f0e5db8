#pragma once

#include <stdexcept>
#include <string>

namespace apsp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read, or written.
struct IoError : Error {
  using Error::Error;
};

/// File content violates the matrix container format.
struct FormatError : Error {
  using Error::Error;
};

/// Solver or sweep parameters cannot be executed as requested.
struct PlanError : Error {
  using Error::Error;
};

/// An argument is outside the operation's domain (NaN input, t <= 0, ...).
struct DomainError : Error {
  using Error::Error;
};

/// Inconsistency found while checking a solution (malformed predecessor chain).
struct VerifyError : Error {
  using Error::Error;
};

}  // namespace apsp

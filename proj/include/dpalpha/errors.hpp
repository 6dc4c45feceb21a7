#pragma once

#include <stdexcept>
#include <string>

namespace dpa {

// Error taxonomy shared by the library and the CLI.  exit_code() is the
// process exit status the CLI maps each category to.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 1; }
  virtual ~Error() = default;
};

// Malformed input files or option combinations.
struct ParseError : Error {
  using Error::Error;
  int exit_code() const override { return 2; }
};

// A computation was refused because it exceeds a configured size bound.
struct CapacityError : Error {
  using Error::Error;
  int exit_code() const override { return 3; }
};

// Mathematically invalid input (bad degree, non-bijective permutation,
// unbounded polytope, ...).
struct DomainError : Error {
  using Error::Error;
  int exit_code() const override { return 4; }
};

struct UnboundedError : DomainError {
  using DomainError::DomainError;
};

struct EmptyPolytopeError : DomainError {
  using DomainError::DomainError;
};

struct DimensionError : DomainError {
  using DomainError::DomainError;
};

struct ClassificationError : DomainError {
  using DomainError::DomainError;
};

// Violation of an internal postcondition (e.g. a saturated basis producing
// non-integral coordinates).  Not reachable from valid inputs.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace dpa

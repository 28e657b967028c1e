#pragma once

#include <stdexcept>
#include <string>

namespace pstar {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input data is structurally inconsistent (dimension mismatch, unknown
/// sector, bad file contents).
struct MalformedInputError : Error {
  using Error::Error;
};

/// An element was handed to an operation outside its domain.
struct DomainError : Error {
  using Error::Error;
};

/// A stated precondition of a construction does not hold.
struct PreconditionError : Error {
  using Error::Error;
};

/// The requested construction has no concrete realization here.
struct UnsupportedError : Error {
  using Error::Error;
};

/// Quotient multiplication depends on the choice of representatives.
struct IllDefinedProductError : Error {
  using Error::Error;
};

/// The defining relation of an induced operator is inconsistent on the
/// spanning set.
struct IllDefinedActionError : Error {
  using Error::Error;
};

/// A truncation tower is too short for the requested analysis.
struct TooFewLevelsError : PreconditionError {
  using PreconditionError::PreconditionError;
};

}  // namespace pstar

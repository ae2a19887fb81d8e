#pragma once

#include <stdexcept>
#include <string>

namespace mope {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Family parameters outside their admissible ranges.
struct ParameterDomainError : Error {
  using Error::Error;
};

// An operation asked for matrix rows beyond the exact window.
struct WindowExhaustedError : Error {
  using Error::Error;
};

// Limiting poles coincide; the rational symbol would be confluent.
struct ConfluenceError : Error {
  using Error::Error;
};

// The quadrature contour is invalid (pole on or outside the circle).
struct ContourError : Error {
  using Error::Error;
};

// Laurent window could not be certified even after widening.
struct WindowCertificationError : Error {
  using Error::Error;
};

// Orthogonality system is singular at the requested multi-index.
struct NonNormalIndexError : Error {
  using Error::Error;
};

// Ensemble density is negative beyond tolerance, or infeasible to enumerate.
struct InvalidEnsembleError : Error {
  using Error::Error;
};

// Requested enumeration exceeds the configured size budget.
struct SizeError : Error {
  using Error::Error;
};

// A structural hypothesis of an identity does not hold for the input.
struct HypothesisViolatedError : Error {
  using Error::Error;
};

// Bad run configuration (missing field, wrong type, inconsistent values).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace mope

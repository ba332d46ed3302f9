#pragma once

#include <stdexcept>
#include <string>

namespace liecontract {

// Base of all library errors. Subtype selects the CLI exit code.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad argument or violated precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// No irreducible representation with the requested invariants.
class AdmissibilityError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// Basis state or index outside the enumerated range.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Dimension or size cap exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A structure constant diverges in the epsilon -> 0 limit.
class ContractionUndefinedError : public Error {
 public:
  using Error::Error;
};

}  // namespace liecontract

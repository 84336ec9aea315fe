#pragma once

#include <stdexcept>
#include <string>

namespace chaindrift {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller violated a documented precondition or a type invariant
// (negative fact weight, out-of-range distortion, dimension mismatch).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Parameters fall outside a formula's domain (beta*B >= 1 without
// re-grounding, eta outside (0,1), beta in {0,1} for the horizon).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An embedding provider failed: transport error, non-200 status,
// malformed payload, or a count/dimension mismatch.
class ProviderError : public Error {
 public:
  using Error::Error;
};

// Bad user-supplied input (empty trace list, trace shorter than the
// envelope horizon, unknown track name).
class InputError : public Error {
 public:
  using Error::Error;
};

// Missing or malformed data files (empty corpus, invalid snapshot).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace chaindrift

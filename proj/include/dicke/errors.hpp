#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

// Invalid user input: out-of-domain physical parameters or malformed config.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConfigError : DomainError {
  using DomainError::DomainError;
};

struct DimensionMismatch : DomainError {
  using DomainError::DomainError;
};

struct InvalidThreshold : DomainError {
  using DomainError::DomainError;
};

// Coherent-state weight beyond the Fock cutoff exceeds the adequacy threshold.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EigSolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a computed quantity breaks a physical invariant by more than
// round-off (e.g. a strongly negative density-matrix eigenvalue).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dicke

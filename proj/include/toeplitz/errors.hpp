#pragma once

#include <stdexcept>
#include <string>

namespace toeplitz {

// Caller broke an operation's precondition (sizes, non-Hermitian input, ...).
struct ContractViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed symbol specification or run configuration.
struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input outside the mathematical domain (nonpositive modulus, index mismatch).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Requested truncation does not fit the grid or overflows q^{-K}.
struct TruncationError : std::length_error {
  using std::length_error::length_error;
};

// lambda is not an eigenvalue relative to the algebra (sign test or endpoint test failed).
struct NotEigenvalue : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Candidate eigenvector projects to (numerically) zero.
struct DegenerateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace toeplitz

#pragma once

#include <stdexcept>
#include <string>

namespace kqmc {

// Argument outside the mathematical domain of an operation (m < 2, composite
// p, dimension mismatch, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A documented precondition of a bound does not hold (p | k, p <= d, window
// too small for d). The bound itself is not applicable.
class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Malformed input data: non-finite samples, unreadable files.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A checked mathematical inequality failed.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kqmc

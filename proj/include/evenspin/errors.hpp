#pragma once

#include <stdexcept>
#include <string>

namespace evenspin {

/// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not fit the operation.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Physical input outside the domain of a construction (off-shell momentum,
/// massless particle at rest, division by a vanishing |p|, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A precondition on a numerical argument was violated (e.g. a matrix that
/// should be Hermitian is not).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A computed result disagrees with the identity it is required to satisfy.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace evenspin

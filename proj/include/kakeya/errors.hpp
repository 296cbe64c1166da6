#pragma once

#include <stdexcept>
#include <string>

namespace kakeya {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: malformed text, arity mismatch, wrong variable support, ...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An enumeration or degree budget would be exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// The operation's mathematical hypothesis does not hold for this input
// (for instance an odd-characteristic statement asked about p = 2).
class HypothesisRefused : public Error {
 public:
  using Error::Error;
};

// Inversion of zero and similar arithmetic domain errors.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Bivariate factorization found no usable specialization line.
class NoGoodSpecialization : public Error {
 public:
  using Error::Error;
};

// Component regression could not produce a consistent estimate.
class EstimationError : public Error {
 public:
  using Error::Error;
};

// An internal identity that must hold exactly did not.
class InternalMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace kakeya

#pragma once

#include <stdexcept>
#include <string>

namespace cachewave {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature hit its depth or panel budget before meeting tolerance.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

/// A computed probability left [0,1] by more than the permitted round-off.
class ProbabilityRangeError : public Error {
 public:
  using Error::Error;
};

class UnknownFactor : public Error {
 public:
  using Error::Error;
};

/// An optimizer could not evaluate its objective at some candidate point. The
/// message names the point and carries the underlying failure.
class EvaluationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace cachewave

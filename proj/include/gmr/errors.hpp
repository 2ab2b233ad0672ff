#pragma once

#include <stdexcept>
#include <string>

namespace gmr {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lattice enumeration would exceed the configured cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Explicit finite-difference step violates the monotonicity bound.
class StabilityError : public Error {
 public:
  using Error::Error;
};

/// A monotone root search could not establish a sign change. Usually means
/// the declared slope bounds of a loss function are wrong.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver failed (non-contraction, iteration budget exhausted).
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Malformed or invalid experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace gmr

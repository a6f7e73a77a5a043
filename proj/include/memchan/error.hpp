#pragma once

#include <stdexcept>
#include <string>

namespace memchan {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a construction would exceed the configured Hilbert-dimension cap.
class DimensionCapExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A state whose amplitudes all vanish (e.g. an MPS whose configuration traces are all zero).
class NullState : public Error {
 public:
  using Error::Error;
};

/// An environment whose diagonal parameters are undefined (zero trace) or have no classical image.
class DegenerateEnvironment : public Error {
 public:
  using Error::Error;
};

class ParityViolation : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown that indicates a construction bug rather than roundoff.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace memchan

#pragma once

#include <stdexcept>
#include <string>

namespace geostat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value lies outside the domain of a function (e.g. a negative
/// eigenvalue handed to a square root).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The point sits on the boundary of the state space where the metric
/// (or density) diverges.
class BoundaryError : public Error {
 public:
  using Error::Error;
};

/// An operator that must be inverted is singular.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// The requested object is not defined for coincident inputs.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class ZeroVectorError : public Error {
 public:
  using Error::Error;
};

/// Root scanning terminated with fewer roots than required.
class ScanFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace geostat

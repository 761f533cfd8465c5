#pragma once

#include <stdexcept>
#include <string>

namespace simplexdecomp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A documented precondition or tolerance-checked invariant does not hold.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A state parameter lies outside its legal interval.
class ParameterOutOfRange : public Error {
 public:
  using Error::Error;
};

/// The Weyl-Heisenberg orbit of a candidate fiducial is not a SIC.
class NotAFiducial : public Error {
 public:
  NotAFiducial(const std::string& what, double max_deviation)
      : Error(what), max_deviation_(max_deviation) {}
  double max_deviation() const noexcept { return max_deviation_; }

 private:
  double max_deviation_;
};

/// No SIC-POVM is known or cached for the requested dimension.
class SicUnavailable : public Error {
 public:
  using Error::Error;
};

}  // namespace simplexdecomp

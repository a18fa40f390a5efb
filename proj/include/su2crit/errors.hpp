#pragma once

#include <stdexcept>
#include <string>

namespace su2crit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A floating-point intermediate left the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature did not reach its tolerance. Carries the best
/// estimate so callers can report it.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double estimate, double error)
      : Error(what), estimate_(estimate), error_(error) {}

  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

/// A Monte Carlo run violated its own bookkeeping gates (rejection rate).
class RunFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace su2crit

#pragma once

#include <stdexcept>
#include <string>

namespace pcf {

/// Argument outside the domain an operation supports.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Gamma function evaluated at a pole.
class PoleError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Result not representable in double precision.
///
/// `log_value` carries the natural log of the (complex) result so callers can
/// recover the modulus exponent and the phase.
class RangeError : public std::range_error {
public:
  RangeError(const std::string& what, double log_re = 0.0, double log_im = 0.0)
      : std::range_error(what), log_re(log_re), log_im(log_im) {}
  bool underflow() const { return log_re < 0.0; }

  double log_re;
  double log_im;
};

/// An iterative method did not reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace pcf

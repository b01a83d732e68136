#pragma once

#include "pcf/numerics.hpp"

namespace pcf {

/// Saddle point of the integrand of U(a, z) = e^{z^2/4} / (i sqrt(2 pi))
/// * int_{c - i inf}^{c + i inf} exp(-z t + t^2/2) t^{-a-1/2} dt.
struct SaddleData {
  double alpha = 0.0;  ///< a + 1/2
  cplx t0;             ///< (z + sqrt(z^2 + 4 alpha)) / 2, principal root
  /// -z sqrt(z^2 + 4 alpha)/4 + alpha/2 - alpha log t0 (principal log).
  cplx prefactor_log;
  /// t0 == 0, which only happens for a = -1/2, z = 0.
  bool degenerate = false;
};

SaddleData saddle(double a, cplx z);

enum class PathKind { Direct, Shifted };

struct PathSpec {
  PathKind kind = PathKind::Direct;
  double delta = 0.0;  ///< 0 or 1
  double truncation = 15.0;
  double tol = 1e-15;
};

/// Paths whose saddle lies closer than this to the imaginary axis are moved
/// right by one unit.
inline constexpr double kShiftTrigger = 0.1;

/// Direct-path results whose quadrature condition number exceeds this are
/// recomputed on the shifted path, keeping the better conditioned value.
inline constexpr double kPathRetryCondition = 50.0;

/// Shifted when Re(t0) < kShiftTrigger (or the saddle is degenerate).
PathSpec select_path(double a, cplx z);

struct IntegralResult {
  cplx value;
  PathKind path = PathKind::Direct;
  QuadratureResult quad;
};

/// U(a, z) for Re(z) >= 0 from the integral along the vertical line through
/// the saddle (or one unit to its right). The quadrature runs on [-15, 15]
/// to tol / 10. A badly conditioned direct path is retried shifted. Throws
/// DomainError for Re(z) < 0 and for the degenerate saddle; a quadrature that misses the tolerance is reported through
/// quad.converged rather than thrown.
IntegralResult u_integral(double a, cplx z, double tol = 1e-15);

/// Same with an explicit path (used to cross-check the two paths).
IntegralResult u_integral_on(double a, cplx z, const PathSpec& path);

}  // namespace pcf

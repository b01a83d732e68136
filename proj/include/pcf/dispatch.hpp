#pragma once

#include <optional>
#include <string_view>

#include "pcf/numerics.hpp"

namespace pcf {

enum class MethodTag { Maclaurin, Integral, AiryType, Poincare, ConnectionComposite };

/// Lower-case name used in CLI output: maclaurin, integral, airy, poincare,
/// connection.
std::string_view method_name(MethodTag m);
/// Inverse of method_name for the four direct methods; nullopt otherwise.
std::optional<MethodTag> parse_method(std::string_view name);

enum EvalFlag : unsigned {
  kNearZeroOfU = 1u << 0,       ///< the two connection terms cancel by more than 10x
  kGammaPoleHandled = 1u << 1,  ///< 1/Gamma(a + 1/2) vanished in the connection formula
  kQuadratureWeak = 1u << 2,    ///< some quadrature or series missed its tolerance
};

struct EvalResult {
  cplx value;
  MethodTag method = MethodTag::Maclaurin;
  /// For ConnectionComposite: methods of U(a, -conj z) and U(-a, -iz).
  MethodTag sub_first = MethodTag::Maclaurin;
  MethodTag sub_second = MethodTag::Maclaurin;
  /// Coarse a-priori relative error estimate.
  double est_error = 0.0;
  unsigned flags = 0;

  bool has(EvalFlag f) const { return (flags & f) != 0; }
};

struct EvalOptions {
  /// Series for |z| <= 3, |a| <= 10 ahead of the integral.
  bool maclaurin_fast_path = true;
  /// Use this method for every principal-domain evaluation instead of the
  /// region rule (must be one of the four direct methods).
  std::optional<MethodTag> force;
  double tol = 1e-15;
};

inline constexpr double kMaxAbsA = 60.0;
inline constexpr double kBaselineError = 5e-13;

/// The Maclaurin fast path is taken only where its rounding amplification
/// stays below this (about 1e-14 relative error).
inline constexpr double kMaclaurinMaxCondition = 40.0;

/// Region rule for 0 <= arg z <= pi/2: Poincare if |z| > 12 + |a|/6, else
/// AiryType if |a| > 20, else Maclaurin if |z| <= 3, |a| <= 10 and the
/// series is well conditioned at (a, z) (when the fast path is on), else
/// Integral.
MethodTag select_method(double a, cplx z, const EvalOptions& opts = {});

/// U(a, z) for real a (|a| <= 60) and finite complex z.
///
/// Im z < 0 goes through Schwarz reflection, pi/2 < arg z <= pi through the
/// connection formula
///   U(a, z) = -i e^{-a pi i} conj U(a, -conj z)
///             + sqrt(2 pi) / Gamma(a + 1/2) e^{(1/4 - a/2) pi i} U(-a, -iz).
/// Throws DomainError outside the supported range, RangeError when the value
/// is not representable, ConvergenceError when a series fails outright.
EvalResult u_pcf(double a, cplx z, const EvalOptions& opts = {});

/// sqrt(2 pi) / Gamma(a + 1/2) * e^{(1/4 - a/2) pi i}; exactly 0 when
/// a + 1/2 is a non-positive integer.
cplx connection_coefficient(double a);

}  // namespace pcf

#pragma once

#include "pcf/numerics.hpp"

namespace pcf {

/// Which exponential factor multiplies the even/odd power series.
enum class SeriesBranch {
  MinusExp,  ///< e^{-z^2/4} times 1F1-type series in +z^2/2
  PlusExp,   ///< e^{+z^2/4} times the Kummer-transformed series
};

struct SeriesEval {
  cplx value;
  int terms_used = 0;
  SeriesBranch branch = SeriesBranch::MinusExp;
  bool converged = true;
  /// Amplification of rounding errors: series cancellation times the
  /// cancellation between U(a,0) u1 and U'(a,0) u2. Large for a > 0 and |z|
  /// near 3, where U is recessive and both parts are not.
  double condition = 1.0;
};

struct InitialValues {
  double u;   ///< U(a, 0)
  double du;  ///< U'(a, 0)
};

/// U(a, 0) and U'(a, 0) through 1/Gamma, so a Gamma pole gives an exact zero.
InitialValues u_at_zero(double a);

inline constexpr int kMaclaurinMaxTerms = 100;
inline constexpr double kMaclaurinTol = 1.1e-16;

/// U(a, z) = U(a,0) u1(a,z) + U'(a,0) u2(a,z) from the power series of the
/// even and odd solutions. Both exponential arrangements are summed and the
/// better conditioned one is returned; on a tie |arg z| <= 3pi/4 selects the
/// e^{-z^2/4} form.
/// Terms are cut when both series' last terms fall below `tol` relative to
/// their sums; `tol` is clamped to at least kMaclaurinTol. Throws DomainError
/// for |z| > 5.
SeriesEval u_maclaurin(double a, cplx z, double tol = kMaclaurinTol);

namespace detail {

/// u1 and u2 with their z-derivatives from the chosen branch; used to check
/// the Wronskian and the agreement of the two branches.
struct MaclaurinBasis {
  cplx u1, u2, du1, du2;
  /// Largest term over |sum| for the even and odd series.
  double cond1 = 1.0, cond2 = 1.0;
  int terms_used = 0;
  bool converged = true;
};

MaclaurinBasis maclaurin_basis(double a, cplx z, SeriesBranch branch, double tol = kMaclaurinTol);

}  // namespace detail

}  // namespace pcf

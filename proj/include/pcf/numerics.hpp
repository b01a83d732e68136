#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace pcf {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// ---------------------------------------------------------------------------
// Complex helpers
// ---------------------------------------------------------------------------

/// exp(i*pi*x) with the argument reduced exactly modulo 2 before scaling, so
/// large |x| does not lose the phase.
cplx exp_i_pi(double x);

/// Relative difference |x - y| / max(|x|, |y|); 0 when both vanish.
double rel_diff(cplx x, cplx y);

bool is_finite(cplx x);

// ---------------------------------------------------------------------------
// Truncated power series in v
// ---------------------------------------------------------------------------

/// Power series c_0 + c_1 v + ... + c_K v^K, truncated at order K.
///
/// Binary operations between series of different order truncate to the
/// smaller order.
class FormalSeries {
public:
  explicit FormalSeries(std::size_t order);
  explicit FormalSeries(std::vector<cplx> coeffs);

  std::size_t order() const { return coeffs_.size() - 1; }
  std::span<const cplx> coeffs() const { return coeffs_; }
  cplx operator[](std::size_t k) const { return coeffs_[k]; }
  cplx& operator[](std::size_t k) { return coeffs_[k]; }

  FormalSeries truncated(std::size_t order) const;

  friend FormalSeries operator+(const FormalSeries& x, const FormalSeries& y);
  friend FormalSeries operator-(const FormalSeries& x, const FormalSeries& y);
  friend FormalSeries operator*(const FormalSeries& x, const FormalSeries& y);
  friend FormalSeries operator*(cplx s, const FormalSeries& x);
  FormalSeries operator-() const;

private:
  std::vector<cplx> coeffs_;
};

/// exp(s) for a series with zero constant term, through the recurrence
/// n e_n = sum_{k=1}^n k s_k e_{n-k} (i.e. e' = e s').
/// Throws DomainError when s[0] != 0.
FormalSeries fps_exp(const FormalSeries& s);

struct CoshSinh {
  FormalSeries cosh;
  FormalSeries sinh;
};

/// (cosh s, sinh s) for a series with zero constant term.
CoshSinh fps_cosh_sinh(const FormalSeries& s);

// ---------------------------------------------------------------------------
// Exact-rational polynomials
// ---------------------------------------------------------------------------

/// Polynomial in one variable with arbitrary-precision rational coefficients.
/// Coefficients are stored lowest degree first with no trailing zeros, so the
/// zero polynomial has an empty coefficient list.
class RationalPoly {
public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<mpq_class> coeffs);

  /// Polynomial x^0, x^1, ... from a list of integers or rationals given as
  /// strings ("5/24").
  static RationalPoly from_strings(std::initializer_list<const char*> coeffs);
  static RationalPoly monomial(const mpq_class& c, std::size_t power);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  mpq_class coeff(std::size_t k) const;

  RationalPoly derivative() const;
  /// Antiderivative P with P(lower) = 0.
  RationalPoly integral_from(const mpq_class& lower) const;

  mpq_class operator()(const mpq_class& x) const;
  cplx operator()(cplx x) const;

  /// Coefficients rounded to double (one rounding per coefficient).
  std::vector<double> to_double() const;

  bool is_even() const;
  bool is_odd() const;

  friend RationalPoly operator+(const RationalPoly& x, const RationalPoly& y);
  friend RationalPoly operator-(const RationalPoly& x, const RationalPoly& y);
  friend RationalPoly operator*(const RationalPoly& x, const RationalPoly& y);
  friend RationalPoly operator*(const mpq_class& s, const RationalPoly& x);
  friend bool operator==(const RationalPoly& x, const RationalPoly& y);

  std::string to_string() const;

private:
  void normalize();
  std::vector<mpq_class> coeffs_;
};

/// Antiderivative of p vanishing at `lower`.
RationalPoly poly_int_poly(const RationalPoly& p, const mpq_class& lower);

/// Horner evaluation of a polynomial with double coefficients (lowest first).
cplx horner(std::span<const double> coeffs, cplx x);

// ---------------------------------------------------------------------------
// Recursive trapezoidal rule
// ---------------------------------------------------------------------------

struct QuadratureResult {
  cplx value;
  int levels_used = 0;
  /// |change| on the final refinement, relative to max(|value|, tiny).
  double last_delta = 0.0;
  /// h * sum |f| / |value|: amplification of rounding errors by cancellation.
  double condition = 1.0;
  bool converged = false;
};

struct TrapezoidOptions {
  double tol = 1e-15;
  int max_levels = 14;
  /// Initial panel count; h0 = (b - a) / initial_panels.
  int initial_panels = 8;
  /// Levels to run before the stopping test may fire.
  int min_levels = 1;
  /// Also accept a change that is within the rounding noise implied by the
  /// condition number, so cancelling integrands do not run to max_levels.
  bool noise_aware = true;
};

using RealIntegrand = std::function<cplx(double)>;

/// Trapezoidal rule on [a, b] with successive step halving; every level reuses
/// the nodes of the previous one. Stops when the relative change between two
/// levels drops below `tol` or after `max_levels` halvings; a result that
/// never met the tolerance is returned with converged = false.
QuadratureResult trapezoid_refine(const RealIntegrand& f, double a, double b,
                                  const TrapezoidOptions& opts = {});

}  // namespace pcf

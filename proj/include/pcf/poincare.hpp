#pragma once

#include "pcf/numerics.hpp"

namespace pcf {

inline constexpr int kPoincareMaxTerms = 50;

struct PoincareEval {
  cplx value;
  int terms_used = 0;
  /// False when the terms stopped decreasing (or hit the cap) before the
  /// neglected term fell below tol relative to the sum.
  bool converged = true;
};

/// U(a, z) ~ z^{-a-1/2} e^{-z^2/4} sum_{s<n} (-1)^s (a+1/2)_{2s} / (s! (2z^2)^s)
/// with n chosen adaptively (at most 50). The prefactor is formed in log
/// space; a result outside the double range throws RangeError carrying
/// log U. Throws DomainError for z = 0.
PoincareEval u_poincare(double a, cplx z, double tol = 1e-16);

/// Same sum with exactly n terms (no adaptivity).
cplx u_poincare_fixed(double a, cplx z, int n);

/// Upper bound on |R_n(a, z)|, the relative remainder of the n-term
/// expansion, for 0 <= arg z <= pi/2.
struct BoundBreakdown {
  int n = 0;
  double a = 0.0;
  double absz = 0.0;
  double term1 = 0.0;  ///< contribution of t in [0, 0.45]
  double term2 = 0.0;  ///< contribution of t in [0.45, inf)
  double total = 0.0;
};

/// Requires 0 <= a <= 10, absz >= 12 and 1 <= n <= 50 (DomainError otherwise).
BoundBreakdown remainder_bound(double a, double absz, int n);

namespace detail {
/// eta-hat_n(a, -t) for 0 < t < 1/2: the remainder of the Maclaurin series of
/// f(a, -t) after n terms, divided by its first neglected term.
double eta_hat_minus(double a, double t, int n);
/// Maclaurin coefficients c_k = (a+1/2)_{2k} / (k! (a+1/2)_k) of f(a, -t) in (t/2)^k.
double f_coefficient(double a, int k);
}  // namespace detail

}  // namespace pcf

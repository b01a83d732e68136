#pragma once

#include "pcf/numerics.hpp"

namespace pcf {

/// Gamma(x) for real x. Throws PoleError at 0, -1, -2, ... and RangeError
/// when the result overflows (x > 171.62); use log_gamma_real there.
double gamma_real(double x);

/// ln Gamma(x) for x > 0. Throws DomainError for x <= 0.
double log_gamma_real(double x);

/// 1/Gamma(x), entire. Exactly 0 at the non-positive integers.
double recip_gamma(double x);

/// Rising factorial x (x+1) ... (x+n-1) by direct product.
double pochhammer(double x, int n);

/// sin(pi x) with exact argument reduction; exactly 0 at integers.
double sin_pi(double x);

struct AiryPair {
  cplx ai;
  cplx aip;
};

/// Ai(w) and Ai'(w) for complex w.
///
/// Maclaurin series (summed in extended precision) for |w| <= 9, the large-|w|
/// expansion summed to its smallest term for |arg w| <= 2pi/3 beyond, and the
/// identity Ai(w) = -e^{2pi i/3} Ai(w e^{2pi i/3}) - e^{-2pi i/3} Ai(w e^{-2pi i/3})
/// in the remaining sector.
AiryPair airy_ai(cplx w);

/// Ai_l(w) := Ai(w e^{-2 pi i l/3}) for l in {-1, 0, 1}.
///
/// IMPORTANT: `aip` is Ai' evaluated at the ROTATED argument, i.e.
/// Ai'(w e^{-2 pi i l/3}), not d/dw Ai_l(w). The total derivative is
/// e^{-2 pi i l/3} * aip; callers that need it apply the phase themselves.
/// Throws DomainError for l outside {-1, 0, 1}.
AiryPair airy_rotated(int l, cplx w);

namespace detail {
/// Individual Airy branches, exposed for overlap tests.
AiryPair airy_maclaurin(cplx w);
AiryPair airy_asymptotic(cplx w);
inline constexpr double kAiryMaclaurinRadius = 9.0;
}  // namespace detail

}  // namespace pcf

#include "pcf/maclaurin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcf/errors.hpp"
#include "pcf/special.hpp"

namespace pcf {

InitialValues u_at_zero(double a) {
  const double sqrt_pi = std::sqrt(kPi);
  return {sqrt_pi * std::exp2(-0.5 * a - 0.25) * recip_gamma(0.75 + 0.5 * a),
          -sqrt_pi * std::exp2(-0.5 * a + 0.25) * recip_gamma(0.25 + 0.5 * a)};
}

namespace detail {

MaclaurinBasis maclaurin_basis(double a, cplx z, SeriesBranch branch, double tol) {
  tol = std::max(tol, kMaclaurinTol);
  const cplx z2 = z * z;
  // Even series S1 = sum c_k z^{2k}, odd series z S2 with S2 = sum d_k z^{2k}.
  // MinusExp: c ratio (a + 1/2 + 2k), d ratio (a + 3/2 + 2k).
  // PlusExp:  c ratio (a - 1/2 - 2k), d ratio (a - 3/2 - 2k).
  const double sign = branch == SeriesBranch::MinusExp ? 1.0 : -1.0;
  const double c_shift = a + sign * 0.5;
  const double d_shift = a + sign * 1.5;

  cplx tc = 1.0, td = 1.0;
  cplx s1 = 1.0, s2 = 1.0;
  cplx ds1 = 0.0;  // sum 2k c_k z^{2k}      (= z S1')
  cplx ds2 = 1.0;  // sum (2k+1) d_k z^{2k}  (= (z S2)')
  double max1 = 1.0, max2 = 1.0;
  MaclaurinBasis r;
  r.terms_used = 1;
  r.converged = false;
  if (z2 == cplx(0.0, 0.0)) {
    r.converged = true;
  } else {
    for (int k = 0; k + 1 < kMaclaurinMaxTerms; ++k) {
      const double twok = 2.0 * k;
      tc *= (c_shift + sign * twok) * z2 / ((twok + 1.0) * (twok + 2.0));
      td *= (d_shift + sign * twok) * z2 / ((twok + 2.0) * (twok + 3.0));
      s1 += tc;
      s2 += td;
      ds1 += (twok + 2.0) * tc;
      ds2 += (twok + 3.0) * td;
      max1 = std::max(max1, std::abs(tc));
      max2 = std::max(max2, std::abs(td));
      r.terms_used = k + 2;
      const bool done1 = std::abs(tc) <= tol * std::abs(s1);
      const bool done2 = std::abs(td) <= tol * std::abs(s2);
      if (done1 && done2) {
        r.converged = true;
        break;
      }
    }
  }

  r.cond1 = max1 / std::max(std::abs(s1), std::numeric_limits<double>::min());
  r.cond2 = max2 / std::max(std::abs(s2), std::numeric_limits<double>::min());
  const cplx e = std::exp(-sign * z2 / 4.0);
  const cplx half_z = -sign * 0.5 * z;  // derivative of the exponent
  r.u1 = e * s1;
  r.u2 = e * z * s2;
  // (e S1)' = e (half_z S1 + S1'), with z S1' = ds1.
  r.du1 = e * (half_z * s1 + (z2 == cplx(0.0, 0.0) ? cplx(0.0) : ds1 / z));
  r.du2 = e * (half_z * z * s2 + ds2);
  return r;
}

}  // namespace detail

SeriesEval u_maclaurin(double a, cplx z, double tol) {
  if (std::abs(z) > 5.0) throw DomainError("u_maclaurin: |z| must not exceed 5");
  const InitialValues iv = u_at_zero(a);
  // Both arrangements are summed; the one whose terms cancel less wins. For
  // a = 10, z = 3i the e^{-z^2/4} form loses five digits more than the other.
  const SeriesBranch preferred =
      std::abs(std::arg(z)) <= 0.75 * kPi ? SeriesBranch::MinusExp : SeriesBranch::PlusExp;
  const SeriesBranch other =
      preferred == SeriesBranch::MinusExp ? SeriesBranch::PlusExp : SeriesBranch::MinusExp;
  const detail::MaclaurinBasis bp = detail::maclaurin_basis(a, z, preferred, tol);
  const detail::MaclaurinBasis bo = detail::maclaurin_basis(a, z, other, tol);
  auto error_scale = [&](const detail::MaclaurinBasis& b) {
    return b.cond1 * std::abs(iv.u * b.u1) + b.cond2 * std::abs(iv.du * b.u2);
  };
  const bool use_other = error_scale(bo) < 0.5 * error_scale(bp);
  const detail::MaclaurinBasis& b = use_other ? bo : bp;

  SeriesEval r;
  r.branch = use_other ? other : preferred;
  r.terms_used = b.terms_used;
  r.converged = b.converged;
  const cplx t1 = iv.u * b.u1, t2 = iv.du * b.u2;
  r.value = t1 + t2;
  const double mag = std::abs(r.value);
  r.condition = mag > 0.0 ? (b.cond1 * std::abs(t1) + b.cond2 * std::abs(t2)) / mag
                          : std::numeric_limits<double>::infinity();
  return r;
}

}  // namespace pcf

#include "pcf/contour_quad.hpp"

#include <cmath>

#include "pcf/errors.hpp"

namespace pcf {

namespace {

constexpr cplx kI{0.0, 1.0};

// log(1 + x) - x, accurate for small |x|.
cplx log1p_minus_x(cplx x) {
  if (std::abs(x) < 0.2) {
    // sum_{k>=2} (-1)^{k+1} x^k / k; 0.2^25 < 1e-17.
    cplx sum = 0.0;
    cplx p = x;
    for (int k = 2; k <= 26; ++k) {
      p *= -x;
      sum += p / static_cast<double>(k);
    }
    return sum;
  }
  return std::log(1.0 + x) - x;
}

// f(w) = w + i log(1 + i w) = i (log(1 + i w) - i w).
cplx f_of(cplx w) { return kI * log1p_minus_x(kI * w); }

}  // namespace

SaddleData saddle(double a, cplx z) {
  SaddleData s;
  s.alpha = a + 0.5;
  const cplx root = std::sqrt(z * z + 4.0 * s.alpha);
  s.t0 = 0.5 * (z + root);
  if (s.t0 == cplx(0.0, 0.0)) {
    s.degenerate = true;
    s.prefactor_log = 0.0;
    return s;
  }
  s.prefactor_log = -z * root / 4.0 + s.alpha / 2.0;
  if (s.alpha != 0.0) s.prefactor_log -= s.alpha * std::log(s.t0);
  return s;
}

PathSpec select_path(double a, cplx z) {
  const SaddleData s = saddle(a, z);
  PathSpec p;
  if (s.degenerate || s.t0.real() < kShiftTrigger) {
    p.kind = PathKind::Shifted;
    p.delta = 1.0;
  }
  return p;
}

IntegralResult u_integral_on(double a, cplx z, const PathSpec& path) {
  if (z.real() < 0.0) throw DomainError("u_integral: requires Re(z) >= 0");
  const SaddleData sd = saddle(a, z);
  if (sd.degenerate) throw DomainError("u_integral: degenerate saddle (a = -1/2, z = 0)");
  const double alpha = sd.alpha;
  const cplx t0 = sd.t0;
  const cplx inv_t0 = 1.0 / t0;

  RealIntegrand integrand;
  if (path.kind == PathKind::Direct) {
    if (!(t0.real() > 0.0)) throw DomainError("u_integral: direct path needs Re(t0) > 0");
    integrand = [=](double s) { return std::exp(-0.5 * s * s + kI * alpha * f_of(s * inv_t0)); };
  } else {
    const double delta = path.delta;
    const cplx log_t0 = std::log(t0);
    integrand = [=](double lambda) {
      const cplx d{delta, lambda};
      cplx e = 0.5 * d * d;
      if (alpha != 0.0) e += alpha * (d * inv_t0 - (std::log(t0 + d) - log_t0));
      return std::exp(e);
    };
  }

  TrapezoidOptions opts;
  opts.tol = path.tol / 10.0;
  opts.min_levels = 3;
  opts.max_levels = 14;
  IntegralResult r;
  r.path = path.kind;
  r.quad = trapezoid_refine(integrand, -path.truncation, path.truncation, opts);
  r.value = std::exp(sd.prefactor_log) / std::sqrt(2.0 * kPi) * r.quad.value;
  return r;
}

IntegralResult u_integral(double a, cplx z, double tol) {
  PathSpec p = select_path(a, z);
  p.tol = tol;
  IntegralResult r = u_integral_on(a, z, p);
  if (r.quad.condition > kPathRetryCondition && p.kind == PathKind::Direct) {
    // The vertical line through a saddle far up the imaginary direction can
    // cross heavy oscillation; the shifted line often avoids it.
    PathSpec q = p;
    q.kind = PathKind::Shifted;
    q.delta = 1.0;
    IntegralResult alt = u_integral_on(a, z, q);
    if (alt.quad.condition < r.quad.condition) r = alt;
  }
  return r;
}

}  // namespace pcf

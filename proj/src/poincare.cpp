#include "pcf/poincare.hpp"

#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pcf/errors.hpp"
#include "pcf/special.hpp"

namespace pcf {

namespace {

cplx scale_by_log(cplx log_prefactor, cplx sum) {
  const cplx log_u = log_prefactor + std::log(sum);
  if (sum == cplx(0.0, 0.0)) return 0.0;
  if (log_u.real() > 709.0 || log_u.real() < -708.0) {
    throw RangeError("u_poincare: result outside double range", log_u.real(), log_u.imag());
  }
  return std::exp(log_prefactor) * sum;
}

cplx log_prefactor(double a, cplx z) { return -(a + 0.5) * std::log(z) - z * z / 4.0; }

}  // namespace

PoincareEval u_poincare(double a, cplx z, double tol) {
  if (z == cplx(0.0, 0.0)) throw DomainError("u_poincare: z must be non-zero");
  const double alpha = a + 0.5;
  const cplx x = 1.0 / (2.0 * z * z);

  PoincareEval r;
  r.converged = false;
  cplx term = 1.0;
  cplx sum = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  bool decreasing = false;
  for (int s = 0; s < kPoincareMaxTerms; ++s) {
    sum += term;
    r.terms_used = s + 1;
    // (-1)^s (alpha)_{2s} / s! x^s -> next term
    const cplx next = -term * ((alpha + 2.0 * s) * (alpha + 2.0 * s + 1.0) / (s + 1.0)) * x;
    const double mag = std::abs(next);
    if (mag <= tol * std::abs(sum)) {
      r.converged = true;
      break;
    }
    // Leading terms may grow; once they have started to fall, growth means
    // the smallest term is behind us.
    if (mag < prev) {
      decreasing = true;
    } else if (decreasing) {
      break;
    }
    prev = mag;
    term = next;
  }
  r.value = scale_by_log(log_prefactor(a, z), sum);
  return r;
}

cplx u_poincare_fixed(double a, cplx z, int n) {
  if (z == cplx(0.0, 0.0)) throw DomainError("u_poincare: z must be non-zero");
  if (n < 1) throw DomainError("u_poincare_fixed: n must be positive");
  const double alpha = a + 0.5;
  const cplx x = 1.0 / (2.0 * z * z);
  cplx term = 1.0, sum = 0.0;
  for (int s = 0; s < n; ++s) {
    sum += term;
    term = -term * ((alpha + 2.0 * s) * (alpha + 2.0 * s + 1.0) / (s + 1.0)) * x;
  }
  return scale_by_log(log_prefactor(a, z), sum);
}

// ---------------------------------------------------------------------------
// Remainder bound
// ---------------------------------------------------------------------------

namespace detail {

double f_coefficient(double a, int k) {
  // (alpha)_{2k} / (alpha)_k = (alpha + k)_k
  const double alpha = a + 0.5;
  double c = 1.0;
  for (int j = 0; j < k; ++j) c *= (alpha + k + j) / (j + 1.0);
  return c;
}

double eta_hat_minus(double a, double t, int n) {
  if (!(t > 0.0 && t < 0.5)) throw DomainError("eta_hat_minus: need 0 < t < 1/2");
  // Tail sum_{j>=0} (c_{n+j} / c_n) (t/2)^j. Summing the tail directly avoids
  // forming f minus its partial sum, which cancels completely for small t.
  // The term ratio tends to 2t < 1.
  const double alpha = a + 0.5;
  double tail = 0.0, comp = 0.0, term = 1.0;
  for (int k = n; k < n + 20000; ++k) {
    const double s = tail + term;
    comp += std::abs(tail) >= std::abs(term) ? (tail - s) + term : (term - s) + tail;
    tail = s;
    const double kk = k;
    term *= (alpha + 2.0 * kk) * (alpha + 2.0 * kk + 1.0) / ((kk + 1.0) * (alpha + kk)) * 0.5 * t;
    if (std::abs(term) <= 1e-18 * std::abs(tail)) break;
  }
  return tail + comp;
}

}  // namespace detail

namespace {

// h_n(a, t) for t >= 0.45.
double h_n(double a, double t, int n) {
  const double one_m = 1.0 - 2.0 * t;
  const double inv_sqrt = 1.0 / std::sqrt(std::abs(one_m));
  double head;
  if (a >= 0.5) {
    // |sqrt(1 - 2t) - 1| as a complex modulus: sqrt(2t) beyond t = 1/2.
    const double mod = one_m >= 0.0 ? 1.0 - std::sqrt(one_m) : std::sqrt(2.0 * t);
    head = std::pow(mod / t, a - 0.5) * inv_sqrt;
  } else {
    head = std::pow(0.5 * (std::sqrt(1.0 + 2.0 * t) + 1.0), 0.5 - a) * inv_sqrt;
  }
  double sum = 0.0, x = 1.0;
  for (int k = 0; k < n; ++k) {
    sum += detail::f_coefficient(a, k) * x;
    x *= 0.5 * t;
  }
  return head + sum;
}

}  // namespace

BoundBreakdown remainder_bound(double a, double absz, int n) {
  if (!(a >= 0.0 && a <= 10.0)) throw DomainError("remainder_bound: need 0 <= a <= 10");
  if (!(absz >= 12.0)) throw DomainError("remainder_bound: need |z| >= 12");
  if (n < 2 || n > kPoincareMaxTerms) throw DomainError("remainder_bound: need 2 <= n <= 50");

  BoundBreakdown b;
  b.n = n;
  b.a = a;
  b.absz = absz;
  const double z2 = absz * absz;
  const double alpha = a + 0.5;

  // term1 = eta-hat_n(a, -0.45) (alpha)_{2n} / (n! (2|z|^2)^n), in logs.
  double log_ratio = 0.0;  // log((alpha)_{2n} / (n! (2 z^2)^n))
  for (int j = 0; j < n; ++j) {
    log_ratio += std::log((alpha + 2.0 * j) * (alpha + 2.0 * j + 1.0) / ((j + 1.0) * 2.0 * z2));
  }
  b.term1 = detail::eta_hat_minus(a, 0.45, n) * std::exp(log_ratio);

  // term2 = |z|^{2a+1} / Gamma(alpha) * int_{0.45}^inf t^{a-1/2} e^{-|z|^2 t} h_n dt
  //       = |z|^2 / Gamma(alpha) * int (|z|^2 t)^{a-1/2} e^{-|z|^2 t} h_n dt.
  const double log_front = std::log(z2) - log_gamma_real(alpha);
  auto weight = [&](double t) {
    return std::exp(log_front + (a - 0.5) * std::log(z2 * t) - z2 * t) * h_n(a, t, n);
  };
  // t = 1/2 -+ s^2 removes the 1/sqrt|1 - 2t| singularity.
  auto left = [&](double s) { return 2.0 * s * weight(0.5 - s * s); };
  auto right = [&](double s) { return 2.0 * s * weight(0.5 + s * s); };
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double part_left = GK::integrate(left, 0.0, std::sqrt(0.05), 15, 1e-13);
  const double part_right = GK::integrate(right, 0.0, std::sqrt(1.5), 15, 1e-13);

  // Beyond t = 2: h_n <= (1 + S_n) (t/2)^{n-1} with S_n = sum_{k<n} c_k, and
  // Gamma(p+1, X) <= X^p e^{-X} X / (X - p) for X > p.
  double s_n = 0.0;
  for (int k = 0; k < n; ++k) s_n += detail::f_coefficient(a, k);
  const double p = a - 0.5 + (n - 1);
  const double big_x = 2.0 * z2;
  double tail = 0.0;
  if (big_x > p) {
    const double log_tail = log_front + std::log1p(s_n) - (n - 1) * std::log(big_x) - std::log(z2) +
                            p * std::log(big_x) - big_x + std::log(big_x / (big_x - p));
    tail = std::exp(log_tail);
    if (tail == 0.0) tail = std::numeric_limits<double>::denorm_min();
  } else {
    tail = std::numeric_limits<double>::infinity();
  }
  b.term2 = part_left + part_right + tail;
  b.total = b.term1 + b.term2;
  return b;
}

}  // namespace pcf

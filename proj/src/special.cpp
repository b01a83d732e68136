#include "pcf/special.hpp"

#include <cmath>
#include <limits>

#include "pcf/errors.hpp"

namespace pcf {

namespace {

#if defined(__SIZEOF_FLOAT128__)
using quad = __float128;
#else
using quad = long double;
#endif

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

long double log_gamma_ext(long double x) {
  int sign = 0;
  return ::lgammal_r(x, &sign);
}

}  // namespace

double sin_pi(double x) {
  if (x == std::floor(x)) return 0.0;
  // r in [-1, 1), exact.
  double r = std::fmod(x, 2.0);
  if (r >= 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  // Fold onto [-1/2, 1/2] using sin(pi r) = sin(pi (1 - r)).
  if (r > 0.5) r = 1.0 - r;
  if (r < -0.5) r = -1.0 - r;
  return static_cast<double>(std::sin(3.141592653589793238462643383279502884L * r));
}

double gamma_real(double x) {
  if (is_nonpositive_integer(x)) throw PoleError("gamma_real: pole at non-positive integer");
  if (x > 171.6243769563027) throw RangeError("gamma_real: overflow", 1.0);
  // Extended-precision libm result rounded once to double.
  return static_cast<double>(std::tgamma(static_cast<long double>(x)));
}

double log_gamma_real(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma_real: argument must be positive");
  return static_cast<double>(log_gamma_ext(static_cast<long double>(x)));
}

double recip_gamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  const long double xl = x;
  if (x >= 0.5) {
    if (x > 1700.0) return 0.0;
    return static_cast<double>(1.0L / std::tgamma(xl));
  }
  // 1/Gamma(x) = Gamma(1 - x) sin(pi x) / pi.
  const long double s = sin_pi(x);
  const long double one_minus = 1.0L - xl;
  long double g;
  if (one_minus < 1700.0L) {
    g = std::tgamma(one_minus);
  } else {
    g = std::exp(log_gamma_ext(one_minus));
  }
  return static_cast<double>(g * s / 3.141592653589793238462643383279502884L);
}

double pochhammer(double x, int n) {
  if (n < 0) throw DomainError("pochhammer: n must be non-negative");
  double p = 1.0;
  for (int k = 0; k < n; ++k) p *= x + k;
  if (!std::isfinite(p)) throw RangeError("pochhammer: overflow", 1.0);
  return p;
}

// ---------------------------------------------------------------------------
// Airy
// ---------------------------------------------------------------------------

namespace detail {

namespace {

struct cq {
  quad re = 0;
  quad im = 0;
};

inline cq operator+(cq a, cq b) { return {a.re + b.re, a.im + b.im}; }
inline cq operator-(cq a, cq b) { return {a.re - b.re, a.im - b.im}; }
inline cq operator*(cq a, cq b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline cq operator*(quad s, cq a) { return {s * a.re, s * a.im}; }
inline quad norm1(cq a) { return (a.re < 0 ? -a.re : a.re) + (a.im < 0 ? -a.im : a.im); }

// Ai(0) and -Ai'(0) as a 64-bit-mantissa head plus tail (about 40 digits).
const quad kAi0 = static_cast<quad>(0.3550280538878172392552L) + static_cast<quad>(4.837129333027899453206e-21L);
const quad kAip0 = static_cast<quad>(0.2588194037928067983928L) + static_cast<quad>(1.237444849179378973219e-20L);

}  // namespace

AiryPair airy_maclaurin(cplx w) {
  // Ai = Ai(0) f - (-Ai'(0)) g with
  //   f = sum 3^k (1/3)_k w^{3k} / (3k)!,  g = sum 3^k (2/3)_k w^{3k+1} / (3k+1)!
  // Terms of f, g, f', g' are advanced by their exact ratios.
  const cq z{w.real(), w.imag()};
  const cq z2 = z * z;
  const cq z3 = z2 * z;

  cq tf{1, 0};       // f term k
  cq tg = z;         // g term k
  cq tdf = 0.5 * z2; // f' term k+1 (f' has no k = 0 term)
  cq tdg{1, 0};      // g' term k
  cq f = tf, g = tg, df = tdf, dg = tdg;

  constexpr quad eps = 1e-33;
  for (int k = 0; k < 400; ++k) {
    const quad k3 = 3 * static_cast<quad>(k);
    tf = (1 / ((k3 + 2) * (k3 + 3))) * (tf * z3);
    tg = (1 / ((k3 + 3) * (k3 + 4))) * (tg * z3);
    tdf = (1 / ((k3 + 3) * (k3 + 5))) * (tdf * z3);
    tdg = (1 / ((k3 + 1) * (k3 + 3))) * (tdg * z3);
    f = f + tf;
    g = g + tg;
    df = df + tdf;
    dg = dg + tdg;
    if (norm1(tf) <= eps * norm1(f) && norm1(tg) <= eps * norm1(g) &&
        norm1(tdf) <= eps * norm1(df) && norm1(tdg) <= eps * norm1(dg)) {
      break;
    }
  }
  const cq ai = kAi0 * f - kAip0 * g;
  const cq aip = kAi0 * df - kAip0 * dg;
  return {{static_cast<double>(ai.re), static_cast<double>(ai.im)},
          {static_cast<double>(aip.re), static_cast<double>(aip.im)}};
}

AiryPair airy_asymptotic(cplx w) {
  const cplx sw = std::sqrt(w);
  const cplx zeta = (2.0 / 3.0) * w * sw;
  const cplx q = std::sqrt(sw);  // w^{1/4}
  const cplx inv_zeta = 1.0 / zeta;

  cplx sum_u = 1.0, sum_v = 1.0;
  cplx pw = 1.0;  // (-1/zeta)^k
  double uk = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    uk *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
    const double vk = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * uk;
    pw *= -inv_zeta;
    const cplx tu = uk * pw;
    const cplx tv = vk * pw;
    const double mag = std::abs(tu) + std::abs(tv);
    // Stop at the smallest term of the divergent series.
    if (mag >= last) break;
    sum_u += tu;
    sum_v += tv;
    last = mag;
    if (mag < 1e-18 * (std::abs(sum_u) + std::abs(sum_v))) break;
  }
  const double c = 0.5 / std::sqrt(kPi);
  const cplx e = std::exp(-zeta);
  return {c * e / q * sum_u, -c * q * e * sum_v};
}

}  // namespace detail

namespace {

const cplx kOmega{-0.5, 0.86602540378443864676};   // e^{2 pi i/3}
const cplx kOmegaBar{-0.5, -0.86602540378443864676};

}  // namespace

AiryPair airy_ai(cplx w) {
  if (std::abs(w) <= detail::kAiryMaclaurinRadius) return detail::airy_maclaurin(w);
  if (std::abs(std::arg(w)) <= 2.0 * kPi / 3.0) return detail::airy_asymptotic(w);
  // Ai(w) = -om Ai(om w) - om^2 Ai(om^2 w) with om = e^{2 pi i/3}; both
  // rotated points land inside |arg| <= 2 pi / 3.
  const AiryPair p = detail::airy_asymptotic(kOmega * w);
  const AiryPair m = detail::airy_asymptotic(kOmegaBar * w);
  return {-kOmega * p.ai - kOmegaBar * m.ai, -kOmegaBar * p.aip - kOmega * m.aip};
}

AiryPair airy_rotated(int l, cplx w) {
  switch (l) {
    case 0:
      return airy_ai(w);
    case 1:
      return airy_ai(kOmegaBar * w);
    case -1:
      return airy_ai(kOmega * w);
    default:
      throw DomainError("airy_rotated: l must be -1, 0 or 1");
  }
}

}  // namespace pcf

#pragma once

// Minimal complex arithmetic over MPFR reals for the coefficient functions,
// whose defining sums cancel by up to ~140 bits near the turning point.

#include <complex>

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

namespace pcf::detail {

using mpreal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<80>,
                                             boost::multiprecision::et_off>;

inline mpreal from_mpq(const mpq_class& q) {
  mpreal r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

struct mpcx {
  mpreal re{0};
  mpreal im{0};

  mpcx() = default;
  mpcx(mpreal r) : re(std::move(r)) {}
  mpcx(mpreal r, mpreal i) : re(std::move(r)), im(std::move(i)) {}
  explicit mpcx(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> to_cplx() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  mpcx& operator+=(const mpcx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  mpcx& operator-=(const mpcx& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  mpcx& operator*=(const mpcx& o) {
    mpreal r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  mpcx& operator*=(const mpreal& s) {
    re *= s;
    im *= s;
    return *this;
  }
};

inline mpcx operator+(mpcx a, const mpcx& b) { return a += b; }
inline mpcx operator-(mpcx a, const mpcx& b) { return a -= b; }
inline mpcx operator*(mpcx a, const mpcx& b) { return a *= b; }
inline mpcx operator*(mpcx a, const mpreal& s) { return a *= s; }
inline mpcx operator*(const mpreal& s, mpcx a) { return a *= s; }
inline mpcx operator-(const mpcx& a) { return {-a.re, -a.im}; }

inline mpreal norm(const mpcx& a) { return a.re * a.re + a.im * a.im; }
inline mpreal abs(const mpcx& a) { return boost::multiprecision::hypot(a.re, a.im); }

inline mpcx inverse(const mpcx& a) {
  const mpreal n = norm(a);
  return {a.re / n, -a.im / n};
}
inline mpcx operator/(const mpcx& a, const mpcx& b) { return a * inverse(b); }

/// Principal square root; the sign of a zero imaginary part selects the side
/// of the cut as for std::sqrt.
inline mpcx sqrt(const mpcx& a) {
  using boost::multiprecision::signbit;
  const mpreal r = abs(a);
  if (a.re >= 0) {
    const mpreal t = boost::multiprecision::sqrt((r + a.re) / 2);
    if (t == 0) return {};
    return {t, a.im / (2 * t)};
  }
  mpreal t = boost::multiprecision::sqrt((r - a.re) / 2);
  const mpreal s = boost::multiprecision::abs(a.im) / (2 * t);
  if (signbit(a.im)) t = -t;
  return {s, t};
}

inline mpcx log(const mpcx& a) {
  return {boost::multiprecision::log(abs(a)), boost::multiprecision::atan2(a.im, a.re)};
}

inline mpcx exp(const mpcx& a) {
  const mpreal m = boost::multiprecision::exp(a.re);
  return {m * boost::multiprecision::cos(a.im), m * boost::multiprecision::sin(a.im)};
}

/// Principal power a^p = exp(p log a).
inline mpcx pow(const mpcx& a, const mpreal& p) { return exp(p * log(a)); }

}  // namespace pcf::detail

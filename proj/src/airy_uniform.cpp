#include "pcf/airy_uniform.hpp"

#include <cmath>
#include <cstdlib>
#include <mutex>

#include "pcf/errors.hpp"
#include "pcf/kernels.hpp"
#include "pcf/special.hpp"
#include "mp_complex.hpp"

namespace pcf {

namespace {

constexpr cplx kI{0.0, 1.0};

// Inside this distance from zt = 1 zeta and xi come from their power series
// in t = zt - 1, which avoid the cancellation of the closed forms.
constexpr double kTurningSeriesRadius = 0.25;

// zeta = 2^{1/3} t S(t)^{2/3} and xi = (2 sqrt 2 / 3) t^{3/2} S(t) with
// S(t) = sum_k binom(1/2, k) 2^{-k} (3/2) / (k + 3/2) t^k.
cplx turning_series(cplx t) {
  cplx sum = 0.0;
  cplx tk = 1.0;
  double binom = 1.0;
  double half_pow = 1.0;
  for (int k = 0; k < 60; ++k) {
    const cplx term = binom * half_pow * 1.5 / (k + 1.5) * tk;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    binom *= (0.5 - k) / (k + 1.0);
    half_pow *= 0.5;
    tk *= t;
  }
  return sum;
}

cplx zeta_outer(cplx zt) {
  // |zt| >= 1
  const cplx inv2 = 1.0 / (zt * zt);
  const cplx r = std::sqrt(1.0 - inv2);
  const cplx bracket = 0.75 * (r - inv2 * std::log(1.0 + r) - std::log(zt) * inv2);
  return std::exp((4.0 / 3.0) * std::log(zt)) * std::pow(bracket, 2.0 / 3.0);
}

cplx zeta_inner(cplx zt) {
  // |zt| < 1; arccos(z) = -i ln(z + i sqrt(1 - z^2)).
  const cplx s = std::sqrt(1.0 - zt * zt);
  const cplx acos = -kI * std::log(zt + kI * s);
  return -std::pow(0.75 * (acos - zt * s), 2.0 / 3.0);
}

}  // namespace

UniformMap map_ztilde(cplx zt) {
  if (zt.real() < 0.0) throw DomainError("map_ztilde: Re(zt) must be non-negative");
  UniformMap m;
  // Points on the cut (0, 1) are taken from above.
  const bool on_cut = zt.imag() == 0.0 && zt.real() < 1.0;
  if (on_cut) zt = {zt.real(), 0.0};
  const bool lower = zt.imag() < 0.0;
  m.ztilde = zt;

  const cplx t = zt - 1.0;
  const double dist = std::abs(t);
  const double modulus = std::abs(zt);

  if (modulus >= 1.0) {
    const cplx r = std::sqrt(1.0 - 1.0 / (zt * zt));
    m.sqrt_m1 = zt * r;
    m.beta = 1.0 / r;
  } else {
    const cplx s = std::sqrt(1.0 - zt * zt);
    m.sqrt_m1 = lower ? -kI * s : kI * s;
    m.beta = lower ? kI * zt / s : -kI * zt / s;
  }
  if (dist < 1e-8) {
    m.singular = true;
    m.beta = {std::numeric_limits<double>::infinity(), 0.0};
  }

  if (dist < kTurningSeriesRadius) {
    const cplx sum = turning_series(t);
    m.zeta = std::cbrt(2.0) * t * std::pow(sum, 2.0 / 3.0);
    m.xi = (2.0 * std::sqrt(2.0) / 3.0) * t * std::sqrt(t) * sum;
  } else {
    m.zeta = modulus >= 1.0 ? zeta_outer(zt) : zeta_inner(zt);
    m.xi = 0.5 * zt * m.sqrt_m1 - 0.5 * std::log(zt + m.sqrt_m1);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Exact coefficient generation
// ---------------------------------------------------------------------------

std::vector<RationalPoly> e_polynomials(int count) {
  std::vector<RationalPoly> e(static_cast<std::size_t>(count) + 1);
  if (count >= 1) e[1] = RationalPoly::from_strings({"0", "-1/4", "0", "5/24"});
  if (count < 2) return e;

  const RationalPoly w = RationalPoly::from_strings({"1", "0", "-2", "0", "1"});  // (p^2 - 1)^2
  e[2] = mpq_class(1, 16) * w * RationalPoly::from_strings({"-2", "0", "5"});

  std::vector<RationalPoly> de(static_cast<std::size_t>(count) + 1);
  de[1] = e[1].derivative();
  de[2] = e[2].derivative();
  const mpq_class half(1, 2);
  for (int s = 2; s < count; ++s) {
    RationalPoly conv;
    for (int j = 1; j <= s - 1; ++j) conv = conv + de[j] * de[s - j];
    const mpq_class lower = (s % 2 == 1) ? mpq_class(1) : mpq_class(0);
    e[s + 1] = half * (w * de[s]) + half * poly_int_poly(w * conv, lower);
    de[s + 1] = e[s + 1].derivative();
  }
  return e;
}

std::vector<mpq_class> a_sequence(int count, const mpq_class& seed) {
  std::vector<mpq_class> b(static_cast<std::size_t>(count) + 1, mpq_class(0));
  if (count >= 1) b[1] = seed;
  if (count >= 2) b[2] = seed;
  for (int s = 2; s < count; ++s) {
    mpq_class conv(0);
    for (int j = 1; j <= s - 1; ++j) conv += b[j] * b[s - j];
    b[s + 1] = mpq_class(s + 1, 2) * b[s] + mpq_class(1, 2) * conv;
    b[s + 1].canonicalize();
  }
  return b;
}

// ---------------------------------------------------------------------------
// Coefficient functions
// ---------------------------------------------------------------------------

namespace detail {

struct MpCoeffData {
  // Coefficients of E_s in powers of beta^2 (after removing beta for odd s).
  std::vector<std::vector<mpreal>> e_half;
  std::vector<mpreal> a_over_s;
  std::vector<mpreal> atilde_over_s;
};

}  // namespace detail

namespace {

using detail::mpcx;
using detail::mpreal;

std::shared_ptr<const detail::MpCoeffData> make_mp_data(const CoeffTables& t) {
  auto d = std::make_shared<detail::MpCoeffData>();
  const int count = static_cast<int>(t.e_polys.size()) - 1;
  d->e_half.resize(count + 1);
  d->a_over_s.resize(count + 1);
  d->atilde_over_s.resize(count + 1);
  for (int s = 1; s <= count; ++s) {
    const auto& c = t.e_polys[s].coeffs();
    for (std::size_t k = s % 2; k < c.size(); k += 2) d->e_half[s].push_back(detail::from_mpq(c[k]));
    d->a_over_s[s] = detail::from_mpq(t.a_seq[s] / s);
    d->atilde_over_s[s] = detail::from_mpq(t.atilde_seq[s] / s);
  }
  return d;
}

struct MpMap {
  mpcx zeta, xi, beta, sqrt_m1;
};

// Extended-precision counterpart of the closed-form branch of map_ztilde.
MpMap map_mp(cplx zt_d) {
  const bool lower = zt_d.imag() < 0.0;
  const mpcx zt(zt_d);
  const mpcx one(mpreal(1));
  const mpreal two_thirds = mpreal(2) / 3;
  MpMap m;
  if (std::abs(zt_d) >= 1.0) {
    const mpcx inv2 = inverse(zt * zt);
    const mpcx r = detail::sqrt(one - inv2);
    m.sqrt_m1 = zt * r;
    m.beta = inverse(r);
    const mpcx bracket = mpreal(3) / 4 * (r - inv2 * detail::log(one + r) - detail::log(zt) * inv2);
    m.zeta = detail::exp(mpreal(4) / 3 * detail::log(zt)) * detail::pow(bracket, two_thirds);
  } else {
    const mpcx s = detail::sqrt(one - zt * zt);
    const mpcx is{-s.im, s.re};
    m.sqrt_m1 = lower ? -is : is;
    const mpcx q = zt / s;
    const mpcx iq{-q.im, q.re};
    m.beta = lower ? iq : -iq;
    const mpcx lg = detail::log(zt + is);
    const mpcx acos{lg.im, -lg.re};
    m.zeta = -detail::pow(mpreal(3) / 4 * (acos - zt * s), two_thirds);
  }
  m.xi = mpreal(1) / 2 * (zt * m.sqrt_m1 - detail::log(zt + m.sqrt_m1));
  return m;
}

using MpSeries = std::vector<mpcx>;

// exp of a series with zero constant term: n e_n = sum_k k s_k e_{n-k}.
MpSeries mp_exp(const MpSeries& s) {
  const std::size_t n = s.size();
  MpSeries e(n);
  e[0] = mpcx(mpreal(1));
  for (std::size_t m = 1; m < n; ++m) {
    mpcx acc;
    for (std::size_t k = 1; k <= m; ++k) {
      if (s[k].re == 0 && s[k].im == 0) continue;
      acc += (s[k] * e[m - k]) * mpreal(static_cast<double>(k));
    }
    e[m] = acc * (mpreal(1) / static_cast<double>(m));
  }
  return e;
}

// Coefficient `index` of x * y.
mpcx mp_coeff_of_product(const MpSeries& x, const MpSeries& y, std::size_t index) {
  mpcx acc;
  for (std::size_t i = 0; i <= index; ++i) {
    if (x[i].re == 0 && x[i].im == 0) continue;
    acc += x[i] * y[index - i];
  }
  return acc;
}

}  // namespace

HatCoeffs ahat_bhat_at(cplx zt, const CoeffTables& tables, int s_max) {
  if (s_max > tables.s_max) throw DomainError("ahat_bhat_at: s_max exceeds table size");
  if (zt.real() < 0.0) throw DomainError("ahat_bhat_at: Re(zt) must be non-negative");
  if (std::abs(zt - 1.0) < 0.05) {
    throw DomainError("ahat_bhat_at: too close to the turning point for direct evaluation");
  }
  if (zt.imag() == 0.0 && zt.real() < 1.0) zt = {zt.real(), 0.0};
  const detail::MpCoeffData& d = *tables.mp;
  const MpMap m = map_mp(zt);
  const std::size_t order = 2 * static_cast<std::size_t>(s_max) + 1;

  const mpcx beta2 = m.beta * m.beta;
  const mpcx inv_xi = inverse(m.xi);
  MpSeries e_even(order + 1), e_odd(order + 1), et_even(order + 1), et_odd(order + 1);
  mpcx xi_pow(mpreal(1));
  for (std::size_t s = 1; s <= order; ++s) {
    xi_pow *= inv_xi;
    const auto& c = d.e_half[s];
    mpcx es;
    for (std::size_t k = c.size(); k-- > 0;) es = es * beta2 + mpcx(c[k]);
    if (s % 2 == 1) es *= m.beta;
    // (-1)^s a_s / s xi^{-s}
    const mpcx ta = xi_pow * d.a_over_s[s];
    const mpcx tt = xi_pow * d.atilde_over_s[s];
    if (s % 2 == 0) {
      e_even[s] = es + ta;
      et_even[s] = es + tt;
    } else {
      e_odd[s] = es - ta;
      et_odd[s] = es - tt;
    }
  }
  auto negated = [](MpSeries v) {
    for (auto& x : v) x = -x;
    return v;
  };
  const MpSeries ex = mp_exp(e_even);
  const MpSeries ex_t = mp_exp(et_even);
  const MpSeries op = mp_exp(e_odd), om = mp_exp(negated(e_odd));
  const MpSeries op_t = mp_exp(et_odd), om_t = mp_exp(negated(et_odd));
  MpSeries sinh_odd(order + 1), cosh_odd_t(order + 1);
  const mpreal half = mpreal(1) / 2;
  for (std::size_t k = 0; k <= order; ++k) {
    sinh_odd[k] = (op[k] - om[k]) * half;
    cosh_odd_t[k] = (op_t[k] + om_t[k]) * half;
  }

  // (zeta / (zt^2 - 1))^{1/4} is analytic and non-vanishing at the turning
  // point; {zeta (zt^2 - 1)}^{-1/4} is written through it and sqrt_m1 so that
  // both factors stay on the branch continued from zt > 1.
  const mpcx ztm(zt);
  const mpcx one(mpreal(1));
  const mpcx p = detail::pow(m.zeta / ((ztm - one) * (ztm + one)), mpreal(1) / 4);
  const mpcx q = inverse(p * m.sqrt_m1);

  HatCoeffs h;
  h.ahat.resize(s_max + 1);
  h.bhat.resize(s_max + 1);
  h.a_raw.resize(s_max + 1);
  h.b_raw.resize(s_max + 1);
  for (int s = 0; s <= s_max; ++s) {
    const mpcx a = mp_coeff_of_product(ex_t, cosh_odd_t, 2 * s);
    const mpcx b = mp_coeff_of_product(ex, sinh_odd, 2 * s + 1);
    h.a_raw[s] = a.to_cplx();
    h.b_raw[s] = b.to_cplx();
    h.ahat[s] = (p * a).to_cplx();
    h.bhat[s] = (q * b).to_cplx();
  }
  return h;
}

CoeffTables build_coeff_tables(int s_max, int n_nodes) {
  if (s_max < 1 || s_max > 16) throw DomainError("build_coeff_tables: s_max must be in [1, 16]");
  if (n_nodes < 16) throw DomainError("build_coeff_tables: need at least 16 nodes");
  CoeffTables t;
  t.s_max = s_max;
  t.n_nodes = n_nodes;
  const int count = 2 * s_max + 1;
  t.e_polys = e_polynomials(count);
  t.a_seq = a_sequence(count, mpq_class(5, 72));
  t.atilde_seq = a_sequence(count, mpq_class(-7, 72));
  t.e_double.resize(count + 1);
  t.a_double.assign(count + 1, 0.0);
  t.atilde_double.assign(count + 1, 0.0);
  for (int s = 1; s <= count; ++s) {
    t.e_double[s] = t.e_polys[s].to_double();
    t.a_double[s] = t.a_seq[s].get_d();
    t.atilde_double[s] = t.atilde_seq[s].get_d();
  }
  t.mp = make_mp_data(t);

  t.unit_re.resize(n_nodes);
  t.unit_im.resize(n_nodes);
  const std::size_t cells = static_cast<std::size_t>(s_max + 1) * n_nodes;
  t.ahat_re.resize(cells);
  t.ahat_im.resize(cells);
  t.bhat_re.resize(cells);
  t.bhat_im.resize(cells);
  for (int k = 0; k < n_nodes; ++k) {
    // Half-step offset keeps t = 0 off the node set.
    const double theta = 2.0 * kPi * (k + 0.5) / n_nodes;
    t.unit_re[k] = std::cos(theta);
    t.unit_im[k] = std::sin(theta);
  }
  for (int k = 0; k < n_nodes; ++k) {
    const HatCoeffs h = ahat_bhat_at(t.node(k), t, s_max);
    for (int s = 0; s <= s_max; ++s) {
      const std::size_t idx = static_cast<std::size_t>(s) * n_nodes + k;
      t.ahat_re[idx] = h.ahat[s].real();
      t.ahat_im[idx] = h.ahat[s].imag();
      t.bhat_re[idx] = h.bhat[s].real();
      t.bhat_im[idx] = h.bhat[s].imag();
    }
  }
  return t;
}

const CoeffTables& default_tables() {
  static const CoeffTables tables = [] {
    const char* path = std::getenv("PCF_COEFF_CACHE");
    if (path != nullptr && *path != '\0') {
      // The exact polynomials are cheap; only the node values are cached.
      CoeffTables t = build_coeff_tables(16, 16);
      t.n_nodes = 2000;
      if (read_coeff_cache(t, path)) return t;
      CoeffTables built = build_coeff_tables(16, 2000);
      try {
        write_coeff_cache(built, path);
      } catch (const std::exception&) {
        // An unwritable cache location only costs the rebuild next time.
      }
      return built;
    }
    return build_coeff_tables(16, 2000);
  }();
  return tables;
}

// ---------------------------------------------------------------------------
// A and B
// ---------------------------------------------------------------------------

namespace {

void check_u(double u) {
  if (!(u >= 20.0)) throw DomainError("Airy-type expansion requires u >= 20");
}

// sum_s c_s x^s by Horner.
cplx poly_in(const std::vector<cplx>& c, double x) {
  cplx acc = 0.0;
  for (std::size_t s = c.size(); s-- > 0;) acc = acc * x + c[s];
  return acc;
}

struct ContourRows {
  std::vector<cplx> a, b;
};

ContourRows contour_rows(cplx zt, const CoeffTables& tables) {
  const int n = tables.n_nodes;
  const std::size_t rows = static_cast<std::size_t>(tables.s_max) + 1;
  std::vector<double> wr(n), wi(n);
  const kernels::KernelSet& ks = kernels::active_kernels();
  ks.cauchy_weights(tables.unit_re, tables.unit_im, zt - 1.0, 1.0 / n, wr, wi);
  ContourRows r{std::vector<cplx>(rows), std::vector<cplx>(rows)};
  ks.row_dots(tables.ahat_re.data(), tables.ahat_im.data(), rows, n, wr.data(), wi.data(),
              r.a.data());
  ks.row_dots(tables.bhat_re.data(), tables.bhat_im.data(), rows, n, wr.data(), wi.data(),
              r.b.data());
  return r;
}

}  // namespace

ABPair ab_direct(double u, cplx zt, const CoeffTables& tables) {
  check_u(u);
  const HatCoeffs h = ahat_bhat_at(zt, tables, tables.s_max);
  const double x = 1.0 / (u * u);
  return {poly_in(h.ahat, x), std::pow(u, -4.0 / 3.0) * poly_in(h.bhat, x), ABMethod::Direct};
}

ABPair ab_contour(double u, cplx zt, const CoeffTables& tables) {
  check_u(u);
  if (!(std::abs(zt - 1.0) < 1.0)) throw DomainError("ab_contour: zt must lie inside |t - 1| = 1");
  const ContourRows r = contour_rows(zt, tables);
  const double x = 1.0 / (u * u);
  return {poly_in(r.a, x), std::pow(u, -4.0 / 3.0) * poly_in(r.b, x), ABMethod::Contour};
}

ABPair ab_eval(double u, cplx zt, const CoeffTables& tables) {
  return std::abs(zt - 1.0) < kContourSwitchRadius ? ab_contour(u, zt, tables)
                                                   : ab_direct(u, zt, tables);
}

cplx w_function(int l, double u, cplx zt, const CoeffTables& tables) {
  const UniformMap m = map_ztilde(zt);
  const cplx w = std::pow(u, 2.0 / 3.0) * m.zeta;
  const AiryPair ai = airy_rotated(l, w);
  // d/dw Ai(w e^{-2 pi i l/3}) = e^{-2 pi i l/3} Ai'(w e^{-2 pi i l/3})
  const cplx phase = exp_i_pi(-2.0 * l / 3.0);
  const ABPair ab = ab_eval(u, zt, tables);
  return ai.ai * ab.calA + phase * ai.aip * ab.calB;
}

namespace {

// sqrt(Gamma(u/2 + 1/2)) without overflow in Gamma itself.
double sqrt_gamma_half(double u) {
  const double lg = 0.5 * log_gamma_real(0.5 * u + 0.5);
  if (lg > 700.0) throw RangeError("Airy-type expansion: Gamma factor overflows", lg);
  return std::exp(lg);
}

}  // namespace

cplx u_airy_neg_a(double u, cplx zt, const CoeffTables& tables) {
  check_u(u);
  const cplx w0 = w_function(0, u, zt, tables);
  const double pref = std::pow(kPi, 0.25) * std::pow(u, -1.0 / 12.0) * std::sqrt(2.0) *
                      sqrt_gamma_half(u);
  return pref * w0;
}

cplx u_airy_pos_a(double u, cplx z, const CoeffTables& tables) {
  check_u(u);
  if (z.imag() < 0.0) throw DomainError("u_airy_pos_a: requires Im(z) >= 0");
  const cplx zt = -kI * z / std::sqrt(2.0 * u);
  const cplx wm1 = w_function(-1, u, {std::max(zt.real(), 0.0), zt.imag()}, tables);
  const double mag = 2.0 * std::pow(kPi, 0.75) / (std::pow(u, 1.0 / 12.0) * sqrt_gamma_half(u));
  return mag * exp_i_pi(-(3.0 * u + 1.0) / 12.0) * wm1;
}

cplx delta_diag(int n, double u, cplx zt, const UEvaluator& independent_u,
                const CoeffTables& tables) {
  check_u(u);
  if (n < 0 || n > tables.s_max) throw DomainError("delta_diag: n out of table range");
  const double root = std::sqrt(2.0 * u);
  const cplx u1 = independent_u(-0.5 * u, root * zt);
  const cplx u2 = independent_u(0.5 * u, -kI * root * zt);

  const UniformMap m = map_ztilde(zt);
  const cplx w = std::pow(u, 2.0 / 3.0) * m.zeta;
  const cplx d0 = airy_rotated(0, w).aip;
  const cplx d1 = airy_rotated(1, w).aip;  // Ai' at the rotated argument
  const double sg = sqrt_gamma_half(u);
  const double u12 = std::pow(u, 1.0 / 12.0);
  const cplx exact = std::sqrt(2.0) * std::pow(kPi, 0.75) * exp_i_pi(-5.0 / 6.0) * u12 / sg * u1 * d1 -
                     std::pow(kPi, 0.25) * u12 * exp_i_pi(-(u + 1.0) / 4.0) * sg * u2 * d0;

  std::vector<cplx> ahat;
  if (std::abs(zt - 1.0) < kContourSwitchRadius) {
    ahat = contour_rows(zt, tables).a;
  } else {
    ahat = ahat_bhat_at(zt, tables, tables.s_max).ahat;
  }
  ahat.resize(static_cast<std::size_t>(n) + 1);
  return exact - poly_in(ahat, 1.0 / (u * u));
}

}  // namespace pcf

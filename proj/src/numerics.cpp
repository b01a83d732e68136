#include "pcf/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pcf/errors.hpp"

namespace pcf {

cplx exp_i_pi(double x) {
  // Reduce to r in (-1, 1]; fmod is exact.
  double r = std::fmod(x, 2.0);
  if (r > 1.0) r -= 2.0;
  if (r <= -1.0) r += 2.0;
  // Exact values at the quarter turns keep integer and half-integer orders
  // free of rounding noise.
  if (r == 0.0) return {1.0, 0.0};
  if (r == 1.0) return {-1.0, 0.0};
  if (r == 0.5) return {0.0, 1.0};
  if (r == -0.5) return {0.0, -1.0};
  return {std::cos(kPi * r), std::sin(kPi * r)};
}

double rel_diff(cplx x, cplx y) {
  const double scale = std::max(std::abs(x), std::abs(y));
  if (scale == 0.0) return 0.0;
  return std::abs(x - y) / scale;
}

bool is_finite(cplx x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); }

// ---------------------------------------------------------------------------
// FormalSeries
// ---------------------------------------------------------------------------

FormalSeries::FormalSeries(std::size_t order) : coeffs_(order + 1, cplx{}) {}

FormalSeries::FormalSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("FormalSeries needs at least one coefficient");
}

FormalSeries FormalSeries::truncated(std::size_t order) const {
  std::vector<cplx> c(coeffs_.begin(),
                      coeffs_.begin() + static_cast<std::ptrdiff_t>(std::min(order, this->order()) + 1));
  return FormalSeries(std::move(c));
}

FormalSeries operator+(const FormalSeries& x, const FormalSeries& y) {
  const std::size_t k = std::min(x.order(), y.order());
  FormalSeries r(k);
  for (std::size_t i = 0; i <= k; ++i) r[i] = x[i] + y[i];
  return r;
}

FormalSeries operator-(const FormalSeries& x, const FormalSeries& y) {
  const std::size_t k = std::min(x.order(), y.order());
  FormalSeries r(k);
  for (std::size_t i = 0; i <= k; ++i) r[i] = x[i] - y[i];
  return r;
}

FormalSeries operator*(const FormalSeries& x, const FormalSeries& y) {
  const std::size_t k = std::min(x.order(), y.order());
  FormalSeries r(k);
  for (std::size_t i = 0; i <= k; ++i) {
    cplx acc{};
    for (std::size_t j = 0; j <= i; ++j) acc += x[j] * y[i - j];
    r[i] = acc;
  }
  return r;
}

FormalSeries operator*(cplx s, const FormalSeries& x) {
  FormalSeries r(x.order());
  for (std::size_t i = 0; i <= x.order(); ++i) r[i] = s * x[i];
  return r;
}

FormalSeries FormalSeries::operator-() const { return cplx{-1.0, 0.0} * *this; }

FormalSeries fps_exp(const FormalSeries& s) {
  if (s[0] != cplx{}) throw DomainError("fps_exp: series must have zero constant term");
  const std::size_t order = s.order();
  FormalSeries e(order);
  e[0] = 1.0;
  for (std::size_t n = 1; n <= order; ++n) {
    cplx acc{};
    for (std::size_t k = 1; k <= n; ++k) acc += static_cast<double>(k) * s[k] * e[n - k];
    e[n] = acc / static_cast<double>(n);
  }
  return e;
}

CoshSinh fps_cosh_sinh(const FormalSeries& s) {
  const FormalSeries ep = fps_exp(s);
  const FormalSeries em = fps_exp(-s);
  FormalSeries c(s.order()), sh(s.order());
  for (std::size_t i = 0; i <= s.order(); ++i) {
    c[i] = 0.5 * (ep[i] + em[i]);
    sh[i] = 0.5 * (ep[i] - em[i]);
  }
  return {std::move(c), std::move(sh)};
}

// ---------------------------------------------------------------------------
// RationalPoly
// ---------------------------------------------------------------------------

RationalPoly::RationalPoly(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  normalize();
}

RationalPoly RationalPoly::from_strings(std::initializer_list<const char*> coeffs) {
  std::vector<mpq_class> c;
  c.reserve(coeffs.size());
  for (const char* s : coeffs) c.emplace_back(s);
  return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::monomial(const mpq_class& c, std::size_t power) {
  std::vector<mpq_class> v(power + 1, mpq_class(0));
  v[power] = c;
  return RationalPoly(std::move(v));
}

void RationalPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpq_class RationalPoly::coeff(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : mpq_class(0);
}

RationalPoly RationalPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<mpq_class> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
  return RationalPoly(std::move(d));
}

RationalPoly RationalPoly::integral_from(const mpq_class& lower) const {
  std::vector<mpq_class> r(coeffs_.size() + 1, mpq_class(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    r[k + 1] = coeffs_[k] / mpq_class(static_cast<unsigned long>(k + 1));
  }
  RationalPoly p(std::move(r));
  const mpq_class at_lower = p(lower);
  if (at_lower != 0) {
    if (p.coeffs_.empty()) p.coeffs_.emplace_back(0);
    p.coeffs_[0] -= at_lower;
    p.normalize();
  }
  return p;
}

RationalPoly poly_int_poly(const RationalPoly& p, const mpq_class& lower) {
  return p.integral_from(lower);
}

mpq_class RationalPoly::operator()(const mpq_class& x) const {
  mpq_class acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

cplx RationalPoly::operator()(cplx x) const {
  const auto d = to_double();
  return horner(d, x);
}

std::vector<double> RationalPoly::to_double() const {
  std::vector<double> d(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) d[k] = coeffs_[k].get_d();
  return d;
}

bool RationalPoly::is_even() const {
  for (std::size_t k = 1; k < coeffs_.size(); k += 2)
    if (coeffs_[k] != 0) return false;
  return true;
}

bool RationalPoly::is_odd() const {
  for (std::size_t k = 0; k < coeffs_.size(); k += 2)
    if (coeffs_[k] != 0) return false;
  return true;
}

RationalPoly operator+(const RationalPoly& x, const RationalPoly& y) {
  std::vector<mpq_class> r(std::max(x.coeffs_.size(), y.coeffs_.size()), mpq_class(0));
  for (std::size_t k = 0; k < x.coeffs_.size(); ++k) r[k] += x.coeffs_[k];
  for (std::size_t k = 0; k < y.coeffs_.size(); ++k) r[k] += y.coeffs_[k];
  return RationalPoly(std::move(r));
}

RationalPoly operator-(const RationalPoly& x, const RationalPoly& y) {
  return x + mpq_class(-1) * y;
}

RationalPoly operator*(const RationalPoly& x, const RationalPoly& y) {
  if (x.coeffs_.empty() || y.coeffs_.empty()) return {};
  std::vector<mpq_class> r(x.coeffs_.size() + y.coeffs_.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
    if (x.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < y.coeffs_.size(); ++j) r[i + j] += x.coeffs_[i] * y.coeffs_[j];
  }
  return RationalPoly(std::move(r));
}

RationalPoly operator*(const mpq_class& s, const RationalPoly& x) {
  std::vector<mpq_class> r(x.coeffs_);
  for (auto& c : r) c *= s;
  return RationalPoly(std::move(r));
}

bool operator==(const RationalPoly& x, const RationalPoly& y) { return x.coeffs_ == y.coeffs_; }

std::string RationalPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    if (coeffs_[k] == 0) continue;
    if (!first) os << " + ";
    os << "(" << coeffs_[k].get_str() << ")";
    if (k > 0) os << "*x^" << k;
    first = false;
  }
  return os.str();
}

cplx horner(std::span<const double> coeffs, cplx x) {
  cplx acc{};
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

// ---------------------------------------------------------------------------
// Trapezoidal rule
// ---------------------------------------------------------------------------

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}  // namespace

QuadratureResult trapezoid_refine(const RealIntegrand& f, double a, double b,
                                  const TrapezoidOptions& opts) {
  if (!(b > a)) throw DomainError("trapezoid_refine: need b > a");
  constexpr double tiny = 1e-300;

  const int panels0 = std::max(1, opts.initial_panels);
  double h = (b - a) / panels0;
  const cplx fa = f(a), fb = f(b);
  cplx sum = 0.5 * (fa + fb);
  double abs_sum = 0.5 * (std::abs(fa) + std::abs(fb));
  for (int k = 1; k < panels0; ++k) {
    const cplx v = f(a + k * h);
    sum += v;
    abs_sum += std::abs(v);
  }

  QuadratureResult res;
  res.value = h * sum;
  res.last_delta = std::numeric_limits<double>::infinity();

  long panels = panels0;
  for (int level = 1; level <= opts.max_levels; ++level) {
    // New nodes sit at the midpoints of the current panels.
    cplx mid{};
    for (long k = 0; k < panels; ++k) {
      const cplx v = f(a + (static_cast<double>(k) + 0.5) * h);
      mid += v;
      abs_sum += std::abs(v);
    }
    sum += mid;
    h *= 0.5;
    panels *= 2;

    const cplx next = h * sum;
    const double scale = std::max(std::abs(next), tiny);
    res.last_delta = std::abs(next - res.value) / scale;
    res.condition = h * abs_sum / scale;
    res.value = next;
    res.levels_used = level;
    // Changes below the rounding noise of the sum carry no information.
    const double floor = opts.noise_aware ? 16.0 * kEps * res.condition : 0.0;
    if (level >= opts.min_levels && res.last_delta < std::max(opts.tol, floor)) {
      res.converged = true;
      return res;
    }
  }
  return res;
}

}  // namespace pcf

#include "pcf/dispatch.hpp"

#include <cmath>

#include "pcf/airy_uniform.hpp"
#include "pcf/contour_quad.hpp"
#include "pcf/errors.hpp"
#include "pcf/maclaurin.hpp"
#include "pcf/poincare.hpp"
#include "pcf/special.hpp"

namespace pcf {

std::string_view method_name(MethodTag m) {
  switch (m) {
    case MethodTag::Maclaurin:
      return "maclaurin";
    case MethodTag::Integral:
      return "integral";
    case MethodTag::AiryType:
      return "airy";
    case MethodTag::Poincare:
      return "poincare";
    case MethodTag::ConnectionComposite:
      return "connection";
  }
  return "unknown";
}

std::optional<MethodTag> parse_method(std::string_view name) {
  if (name == "maclaurin") return MethodTag::Maclaurin;
  if (name == "integral") return MethodTag::Integral;
  if (name == "airy") return MethodTag::AiryType;
  if (name == "poincare") return MethodTag::Poincare;
  return std::nullopt;
}

MethodTag select_method(double a, cplx z, const EvalOptions& opts) {
  const double r = std::abs(z);
  const double abs_a = std::abs(a);
  if (r > 12.0 + abs_a / 6.0) return MethodTag::Poincare;
  if (abs_a > 20.0) return MethodTag::AiryType;
  if (opts.maclaurin_fast_path && r <= 3.0 && abs_a <= 10.0 &&
      u_maclaurin(a, z).condition <= kMaclaurinMaxCondition) {
    return MethodTag::Maclaurin;
  }
  return MethodTag::Integral;
}

cplx connection_coefficient(double a) {
  const double rg = recip_gamma(a + 0.5);
  if (rg == 0.0) return 0.0;
  return std::sqrt(2.0 * kPi) * rg * exp_i_pi(0.25 - 0.5 * a);
}

namespace {

struct Partial {
  cplx value;
  MethodTag method;
  unsigned flags = 0;
};

// 0 <= arg z <= pi/2.
Partial evaluate_principal(double a, cplx z, const EvalOptions& opts) {
  const MethodTag m = opts.force ? *opts.force : select_method(a, z, opts);
  Partial p{0.0, m, 0};
  switch (m) {
    case MethodTag::Maclaurin: {
      const SeriesEval s = u_maclaurin(a, z, opts.tol);
      if (!s.converged) throw ConvergenceError("Maclaurin series did not converge in 100 terms");
      p.value = s.value;
      break;
    }
    case MethodTag::Integral: {
      if (saddle(a, z).degenerate) {
        // a = -1/2, z = 0: U = 1.
        p.value = u_maclaurin(a, z).value;
        p.method = MethodTag::Maclaurin;
        break;
      }
      const IntegralResult r = u_integral(a, z, opts.tol);
      if (!r.quad.converged) p.flags |= kQuadratureWeak;
      p.value = r.value;
      break;
    }
    case MethodTag::AiryType: {
      if (a < 0.0) {
        const double u = -2.0 * a;
        p.value = u_airy_neg_a(u, z / std::sqrt(2.0 * u));
      } else {
        p.value = u_airy_pos_a(2.0 * a, z);
      }
      break;
    }
    case MethodTag::Poincare: {
      const PoincareEval e = u_poincare(a, z, 0.1 * opts.tol);
      if (!e.converged) p.flags |= kQuadratureWeak;
      p.value = e.value;
      break;
    }
    case MethodTag::ConnectionComposite:
      throw DomainError("ConnectionComposite cannot be forced");
  }
  return p;
}

// Maps a point with 0 <= arg z <= pi/2 exactly: a zero imaginary part is
// made +0 so the series and integrals see the principal side.
cplx upper(cplx z) { return {z.real(), z.imag() == 0.0 ? 0.0 : z.imag()}; }

EvalResult evaluate_upper(double a, cplx z, const EvalOptions& opts) {
  EvalResult res;
  if (z.real() >= 0.0) {
    const Partial p = evaluate_principal(a, upper(z), opts);
    res.value = p.value;
    res.method = p.method;
    res.sub_first = res.sub_second = p.method;
    res.flags = p.flags;
    res.est_error = kBaselineError;
    return res;
  }

  // pi/2 < arg z <= pi.
  const cplx z1 = upper(-std::conj(z));
  const cplx z2 = upper(cplx(z.imag(), -z.real()));  // -i z
  const Partial p1 = evaluate_principal(a, z1, opts);
  const cplx t1 = exp_i_pi(-a - 0.5) * std::conj(p1.value);  // -i e^{-a pi i}
  res.method = MethodTag::ConnectionComposite;
  res.sub_first = p1.method;
  res.flags = p1.flags;

  const cplx coeff = connection_coefficient(a);
  cplx t2 = 0.0;
  if (coeff == cplx(0.0, 0.0)) {
    res.flags |= kGammaPoleHandled;
    res.sub_second = p1.method;
  } else {
    const Partial p2 = evaluate_principal(-a, z2, opts);
    res.sub_second = p2.method;
    res.flags |= p2.flags;
    t2 = coeff * p2.value;
  }
  res.value = t1 + t2;
  const double mag = std::abs(res.value);
  const double inflation = mag > 0.0 ? (std::abs(t1) + std::abs(t2)) / mag
                                     : std::numeric_limits<double>::infinity();
  res.est_error = kBaselineError * std::max(1.0, inflation);
  if (inflation > 10.0) res.flags |= kNearZeroOfU;
  return res;
}

}  // namespace

EvalResult u_pcf(double a, cplx z, const EvalOptions& opts) {
  if (!std::isfinite(a) || !is_finite(z)) throw DomainError("u_pcf: arguments must be finite");
  if (std::abs(a) > kMaxAbsA) throw DomainError("u_pcf: |a| must not exceed 60");
  if (opts.force && *opts.force == MethodTag::ConnectionComposite) {
    throw DomainError("u_pcf: ConnectionComposite cannot be forced");
  }

  EvalResult res;
  if (z.imag() < 0.0) {
    res = evaluate_upper(a, std::conj(z), opts);
    res.value = std::conj(res.value);
  } else {
    res = evaluate_upper(a, z, opts);
  }
  if (z.imag() == 0.0) res.value.imag(0.0);
  if (!is_finite(res.value)) throw RangeError("u_pcf: result not representable", HUGE_VAL);
  return res;
}

}  // namespace pcf

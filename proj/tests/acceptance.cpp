// Acceptance checks. Prints one PASS/FAIL line per criterion (sub-checks are
// indented) and exits non-zero if any criterion fails. Tolerances are fixed
// here and must not be loosened to make a line pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pcf/airy_uniform.hpp"
#include "pcf/contour_quad.hpp"
#include "pcf/dispatch.hpp"
#include "pcf/maclaurin.hpp"
#include "pcf/poincare.hpp"
#include "pcf/special.hpp"
#include "pcf/validate.hpp"

using namespace pcf;

namespace {

int g_failed = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Runs a sub-check, printing its detail line; returns its outcome.
bool sub(bool ok, const std::string& what) {
  std::printf("    %s %s\n", ok ? "ok  " : "FAIL", what.c_str());
  return ok;
}

void criterion(int id, const char* title, const std::function<bool()>& body) {
  std::printf("criterion %d: %s\n", id, title);
  std::fflush(stdout);
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    std::printf("    exception: %s\n", e.what());
  }
  std::printf("%s criterion %d\n", ok ? "PASS" : "FAIL", id);
  std::fflush(stdout);
  if (!ok) ++g_failed;
}

std::string fmt(const char* f, double x) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

bool global_sweep() {
  SweepConfig cfg;  // 10^4 points, seed 42, full domain
  const auto t0 = std::chrono::steady_clock::now();
  SweepReport r = run_sweep(cfg);
  const double secs = seconds_since(t0);
  std::printf("    n=%lld flagged=%lld failed=%lld q50=%.3g q99=%.3g q999=%.3g\n",
              static_cast<long long>(r.n_samples), static_cast<long long>(r.n_flagged),
              static_cast<long long>(r.n_failed), r.q50, r.q99, r.q999);
  bool ok = sub(r.max_residual <= 5e-13, fmt("max residual %.3e <= 5e-13", r.max_residual));
  ok &= sub(r.flagged_fraction < 0.02, fmt("flagged fraction %.4f < 0.02", r.flagged_fraction));
  ok &= sub(r.n_failed == 0, "no evaluation failures");
  ok &= sub(secs < 120.0, fmt("runtime %.1f s < 120 s (single thread)", secs));
  return ok;
}

bool closed_forms() {
  std::vector<cplx> zs;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 10; ++j) {
      // Radii 1.25 .. 25, angles spread over (-pi, pi] avoiding the exact axes.
      zs.push_back(std::polar(1.25 * (i + 1), kPi * (2.0 * j - 8.7) / 10.0));
    }
  }
  struct Route {
    const char* name;
    std::optional<MethodTag> force;
    std::function<bool(cplx)> applies;
  };
  const Route routes[] = {
      {"auto", std::nullopt, [](cplx) { return true; }},
      {"maclaurin", MethodTag::Maclaurin, [](cplx z) { return std::abs(z) <= 5.0; }},
      {"integral", MethodTag::Integral, [](cplx) { return true; }},
      {"poincare", MethodTag::Poincare, [](cplx z) { return std::abs(z) > 12.25; }},
  };
  bool ok = true;
  for (double a : {-0.5, -1.5}) {
    for (const Route& rt : routes) {
      EvalOptions o;
      o.force = rt.force;
      double worst = 0.0;
      int n = 0, via_connection = 0;
      for (cplx z : zs) {
        if (!rt.applies(z)) continue;
        const cplx g = std::exp(-z * z / 4.0);
        const cplx want = a == -0.5 ? g : z * g;
        EvalResult r = u_pcf(a, z, o);
        worst = std::max(worst, rel_diff(r.value, want));
        via_connection += r.method == MethodTag::ConnectionComposite;
        ++n;
      }
      char buf[160];
      std::snprintf(buf, sizeof buf, "a=%.1f %-9s %3d points (%3d via connection): worst %.2e <= 1e-13", a,
                    rt.name, n, via_connection, worst);
      ok &= sub(worst <= 1e-13, buf);
    }
  }
  std::printf("    (the Airy-type method needs |a| >= 10 and does not apply to these orders)\n");
  return ok;
}

bool appendix_bound() {
  const auto t0 = std::chrono::steady_clock::now();
  BoundBreakdown b = remainder_bound(10.0, 12.0, 35);
  const double secs = seconds_since(t0);
  bool ok = sub(std::abs(b.term1 / 5.66790e-14 - 1.0) <= 0.01, fmt("term1 = %.6e within 1%% of 5.66790e-14", b.term1));
  ok &= sub(std::abs(b.term2 / 5.95016e-15 - 1.0) <= 0.01, fmt("term2 = %.6e within 1%% of 5.95016e-15", b.term2));
  ok &= sub(b.total < 6.24e-14, fmt("total = %.6e < 6.24e-14", b.total));
  ok &= sub(secs < 1.0, fmt("runtime %.3f s < 1 s", secs));
  return ok;
}

bool maclaurin_terms() {
  SeriesEval r = u_maclaurin(10.0, cplx(0.0, 3.0), 1.1e-16);
  bool ok = sub(r.terms_used <= 40, fmt("terms_used = %.0f <= 40", r.terms_used));
  ok &= sub(r.converged, "series converged");
  return ok;
}

bool overlap_agreement() {
  std::mt19937_64 gen(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  EvalOptions airy, integral, poincare;
  airy.force = MethodTag::AiryType;
  integral.force = MethodTag::Integral;
  poincare.force = MethodTag::Poincare;

  double w1 = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double mag = 10.0 + 10.0 * unit(gen);
    const double a = unit(gen) < 0.5 ? -mag : mag;
    const cplx z = std::polar(1.0 + 11.0 * unit(gen), 0.5 * kPi * unit(gen));
    w1 = std::max(w1, rel_diff(u_pcf(a, z, airy).value, u_pcf(a, z, integral).value));
  }
  double w2 = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double a = -10.0 + 20.0 * unit(gen);
    const cplx z = std::polar(13.0 + 17.0 * unit(gen), 0.5 * kPi * unit(gen));
    w2 = std::max(w2, rel_diff(u_pcf(a, z, poincare).value, u_pcf(a, z, integral).value));
  }
  const CoeffTables& t = default_tables();
  double w3 = 0.0;
  int ring = 0;
  for (int j = 0; j < 64; ++j) {
    const cplx zt = 1.0 + std::polar(0.6, 2.0 * kPi * (j + 0.5) / 64.0);
    ABPair d = ab_direct(20.0, zt, t), c = ab_contour(20.0, zt, t);
    w3 = std::max({w3, rel_diff(d.calA, c.calA), rel_diff(d.calB, c.calB)});
    ++ring;
  }
  bool ok = sub(w1 <= 5e-13, fmt("(i) airy vs integral, 100 points: worst %.2e <= 5e-13", w1));
  ok &= sub(w2 <= 5e-13, fmt("(ii) poincare vs integral, 100 points: worst %.2e <= 5e-13", w2));
  ok &= sub(w3 <= 1e-12, fmt("(iii) contour vs direct coefficients on |zt-1| = 0.6, u = 20: worst %.2e <= 1e-12", w3));
  return ok;
}

bool exact_structure() {
  auto a = a_sequence(3, mpq_class(5, 72));
  auto at = a_sequence(3, mpq_class(-7, 72));
  bool ok = sub(a[3] == mpq_class(1105, 10368), "a_3 = " + a[3].get_str() + " (want 1105/10368)");
  ok &= sub(at[3] == mpq_class(-1463, 10368), "atilde_3 = " + at[3].get_str() + " (want -1463/10368)");

  auto e = e_polynomials(33);
  auto w = RationalPoly::from_strings({"1", "0", "-2", "0", "1"});
  auto e2 = mpq_class(1, 16) * w * RationalPoly::from_strings({"-2", "0", "5"});
  ok &= sub(e[2] == e2, "E_2 = (1 - beta^2)^2 (5 beta^2 - 2) / 16 exactly");
  bool parity = true, ends = true;
  for (int s = 1; s <= 33; ++s) parity &= (s % 2 ? e[s].is_odd() : e[s].is_even());
  for (int s = 1; s <= 16; ++s) ends &= e[2 * s](mpq_class(1)) == 0 && e[2 * s](mpq_class(-1)) == 0;
  ok &= sub(parity, "E_s has the parity of s for s <= 33");
  ok &= sub(ends, "E_2s(+1) = E_2s(-1) = 0 for s <= 16");
  return ok;
}

bool base_layer() {
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const cplx w = std::polar(2.0 * (i + 1), kPi * (2.0 * j - 9.0) / 10.0);
      const cplx t0 = airy_rotated(0, w).ai;
      const cplx tm = exp_i_pi(2.0 / 3.0) * airy_rotated(-1, w).ai;
      const cplx tp = exp_i_pi(-2.0 / 3.0) * airy_rotated(1, w).ai;
      worst = std::max(worst, std::abs(t0 + tm + tp) / std::max({std::abs(t0), std::abs(tm), std::abs(tp)}));
    }
  }
  bool ok = sub(worst < 1e-13, fmt("Airy connection identity, 100 points |w| <= 20: worst %.2e < 1e-13", worst));
  AiryPair z = airy_ai(0.0);
  const double e0 = std::abs(z.ai - 0.35502805388781723926);
  const double e1 = std::abs(z.aip + 0.25881940379280679840);
  ok &= sub(e0 <= 1e-15 && e1 <= 1e-15, fmt("Ai(0), Ai'(0) errors <= 1e-15 (max %.1e)", std::max(e0, e1)));

  bool rec_exact = true;
  for (int n = 1; n <= 20; ++n) rec_exact &= gamma_real(n + 1.0) == n * gamma_real(n);
  double rec_worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double x = -19.93 + 0.2473 * k;
    rec_worst = std::max(rec_worst, std::abs(gamma_real(x + 1.0) / (x * gamma_real(x)) - 1.0));
  }
  ok &= sub(rec_exact, "Gamma(n+1) = n Gamma(n) bit-exactly for n = 1..20");
  ok &= sub(rec_worst <= 6e-16, fmt("Gamma(x+1) / (x Gamma(x)) - 1 over 200 non-integers: %.1e <= 6e-16", rec_worst));
  bool zeros = true;
  for (int n = 0; n <= 60; ++n) zeros &= recip_gamma(-static_cast<double>(n)) == 0.0;
  ok &= sub(zeros, "1/Gamma(-n) == 0 exactly for n = 0..60");
  return ok;
}

bool truncation_ordering() {
  std::printf("    excluded: |Delta_16(20, 0)| = 8.2195e-16 and |R_35(10, 12i)| = 1.131e-14 lie below\n"
              "    double-precision oracle noise; replaced by criteria 3 and 5 and the ordering check below\n");
  EvalOptions integral;
  integral.force = MethodTag::Integral;
  UEvaluator indep = [&](double a, cplx z) { return u_pcf(a, z, integral).value; };
  const double d2 = std::abs(delta_diag(2, 20.0, 0.0, indep));
  const double d16 = std::abs(delta_diag(16, 20.0, 0.0, indep));
  std::printf("    |Delta_2(20, 0)| = %.3e, |Delta_16(20, 0)| = %.3e\n", d2, d16);
  return sub(d2 > 1e3 * d16, "|Delta_2| >> |Delta_16| at u = 20 (ratio > 1e3)");
}

}  // namespace

int main() {
  criterion(1, "global recurrence sweep, 10^4 points, full domain", global_sweep);
  criterion(2, "closed forms U(-1/2, z) and U(-3/2, z), 200 points, |z| <= 25", closed_forms);
  criterion(3, "remainder bound reproduction, n = 35, a = 10, |z| = 12", appendix_bound);
  criterion(4, "Maclaurin term count at a = 10, z = 3i", maclaurin_terms);
  criterion(5, "method overlap agreement", overlap_agreement);
  criterion(6, "exact coefficient structure", exact_structure);
  criterion(7, "Airy and gamma base layer", base_layer);
  criterion(8, "substitute truncation-ordering check (values below double precision excluded)",
            truncation_ordering);
  std::printf("%s: %d criterion line(s) failed\n", g_failed ? "FAIL" : "PASS", g_failed);
  return g_failed ? 1 : 0;
}

#include "pcf/validate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

#include "pcf/airy_uniform.hpp"
#include "pcf/errors.hpp"

namespace pcf {

Evaluator default_evaluator() {
  return [](double a, cplx z) { return u_pcf(a, z); };
}

ResidualResult recurrence_residual(double a, cplx z, const Evaluator& eval) {
  const EvalResult lo = eval(a - 1.0, z);
  const EvalResult mid = eval(a, z);
  const EvalResult hi = eval(a + 1.0, z);
  const cplx t0 = lo.value;
  const cplx t1 = z * mid.value;
  const cplx t2 = (a + 0.5) * hi.value;
  const double scale = std::max({std::abs(t0), std::abs(t1), std::abs(t2)});
  if (!(scale > 0.0)) throw DomainError("recurrence_residual: all terms vanish");
  ResidualResult r;
  r.residual = std::abs(t0 - t1 - t2) / scale;
  r.flags = lo.flags | mid.flags | hi.flags;
  r.methods = {lo.method, mid.method, hi.method};
  return r;
}

namespace {

// Uniform on [0, 1) from the top 53 bits; fixed across platforms, unlike
// std::uniform_real_distribution.
double unit(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs body(i) for i in [0, n) on `threads` workers.
template <typename Body>
void parallel_for(std::int64_t n, int threads, Body body) {
  threads = std::max(1, std::min<int>(resolve_threads(threads), static_cast<int>(std::max<std::int64_t>(n, 1))));
  if (threads == 1) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::int64_t i = next++; i < n; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::min(sorted.size() - 1, rank == 0 ? 0 : rank - 1)];
}

}  // namespace

std::vector<SweepPoint> sweep_samples(const SweepConfig& cfg) {
  if (cfg.n_samples < 1) throw DomainError("sweep: n_samples must be positive");
  if (!(cfg.a_max >= cfg.a_min) || !(cfg.absz_max >= cfg.absz_min) || cfg.absz_min < 0.0) {
    throw DomainError("sweep: empty or invalid range");
  }
  std::mt19937_64 gen(cfg.seed);
  std::vector<SweepPoint> pts(static_cast<std::size_t>(cfg.n_samples));
  for (std::int64_t i = 0; i < cfg.n_samples; ++i) {
    SweepPoint& p = pts[static_cast<std::size_t>(i)];
    p.index = i;
    p.a = cfg.a_min + (cfg.a_max - cfg.a_min) * unit(gen);
    const double r = cfg.absz_min + (cfg.absz_max - cfg.absz_min) * unit(gen);
    const double u = unit(gen);
    // (-pi, pi] or [0, pi/2]
    const double theta = cfg.domain == ArgDomain::Full ? kPi - 2.0 * kPi * u : 0.5 * kPi * u;
    p.z = std::polar(r, theta);
  }
  return pts;
}

SweepReport run_sweep(const SweepConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<SweepPoint> pts = sweep_samples(cfg);
  (void)default_tables();  // build once before the workers start

  EvalOptions opts;
  opts.force = cfg.method_override;
  opts.maclaurin_fast_path = cfg.maclaurin_fast_path;
  const Evaluator eval = [opts](double a, cplx z) { return u_pcf(a, z, opts); };

  parallel_for(cfg.n_samples, cfg.threads, [&](std::int64_t i) {
    SweepPoint& p = pts[static_cast<std::size_t>(i)];
    try {
      const ResidualResult r = recurrence_residual(p.a, p.z, eval);
      p.residual = r.residual;
      p.flags = r.flags;
      p.methods = r.methods;
    } catch (const std::exception& e) {
      p.error = e.what();
    }
  });

  SweepReport rep;
  rep.n_samples = cfg.n_samples;
  std::vector<double> res;
  res.reserve(pts.size());
  std::vector<const SweepPoint*> ok;
  for (const SweepPoint& p : pts) {
    if (!p.error.empty()) {
      ++rep.n_failed;
      if (rep.failures.size() < 10) rep.failures.push_back(p);
      continue;
    }
    if (p.flags & kNearZeroOfU) {
      ++rep.n_flagged;
      continue;
    }
    res.push_back(p.residual);
    ok.push_back(&p);
  }
  std::sort(res.begin(), res.end());
  if (!res.empty()) {
    rep.max_residual = res.back();
    rep.q50 = quantile(res, 0.5);
    rep.q99 = quantile(res, 0.99);
    rep.q999 = quantile(res, 0.999);
    const auto above = res.end() - std::upper_bound(res.begin(), res.end(), 5e-14);
    rep.frac_above_5em14 = static_cast<double>(above) / static_cast<double>(res.size());
  }
  rep.flagged_fraction = static_cast<double>(rep.n_flagged) / static_cast<double>(rep.n_samples);
  // Ties broken by index so the list is independent of scheduling.
  std::stable_sort(ok.begin(), ok.end(),
                   [](const SweepPoint* x, const SweepPoint* y) { return x->residual > y->residual; });
  for (std::size_t i = 0; i < ok.size() && i < 10; ++i) rep.worst_points.push_back(*ok[i]);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::vector<std::pair<double, cplx>> grid_points(const GridSpec& g) {
  if (g.na < 1 || g.nz < 1) throw DomainError("grid: na and nz must be positive");
  auto lin = [](double lo, double hi, int n, int i) {
    return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  std::vector<std::pair<double, cplx>> pts;
  pts.reserve(static_cast<std::size_t>(g.na) * g.nz);
  for (int i = 0; i < g.na; ++i) {
    for (int j = 0; j < g.nz; ++j) {
      pts.emplace_back(lin(g.a_min, g.a_max, g.na, i), std::polar(lin(g.z_min, g.z_max, g.nz, j), g.arg));
    }
  }
  return pts;
}

std::vector<MapRow> method_agreement_map(const GridSpec& g, MethodTag m1, MethodTag m2, int threads) {
  const auto pts = grid_points(g);
  std::vector<MapRow> rows(pts.size());
  (void)default_tables();
  parallel_for(static_cast<std::int64_t>(pts.size()), threads, [&](std::int64_t i) {
    const auto& [a, z] = pts[static_cast<std::size_t>(i)];
    MapRow& row = rows[static_cast<std::size_t>(i)];
    row.a = a;
    row.z = z;
    row.tag1 = method_name(m1);
    row.tag2 = method_name(m2);
    try {
      EvalOptions o1, o2;
      o1.force = m1;
      o2.force = m2;
      const EvalResult r1 = u_pcf(a, z, o1);
      row.u = r1.value;
      row.est_error = r1.est_error;
      row.flags = r1.flags;
      const EvalResult r2 = m1 == m2 ? r1 : u_pcf(a, z, o2);
      row.flags |= r2.flags;
      row.value = rel_diff(r1.value, r2.value);
    } catch (const std::exception&) {
      row.value = -1.0;
    }
  });
  return rows;
}

std::vector<MapRow> recurrence_map(const GridSpec& g, int threads) {
  const auto pts = grid_points(g);
  std::vector<MapRow> rows(pts.size());
  (void)default_tables();
  parallel_for(static_cast<std::int64_t>(pts.size()), threads, [&](std::int64_t i) {
    const auto& [a, z] = pts[static_cast<std::size_t>(i)];
    MapRow& row = rows[static_cast<std::size_t>(i)];
    row.a = a;
    row.z = z;
    try {
      const EvalResult r = u_pcf(a, z);
      row.u = r.value;
      row.est_error = r.est_error;
      row.tag1 = method_name(r.method);
      row.tag2 = "recurrence";
      const ResidualResult rr = recurrence_residual(a, z);
      row.value = rr.residual;
      row.flags = rr.flags;
    } catch (const std::exception&) {
      row.value = -1.0;
      if (row.tag1.empty()) row.tag1 = "error";
      row.tag2 = "recurrence";
    }
  });
  return rows;
}

std::string flag_names(unsigned flags) {
  std::string s;
  auto add = [&](const char* n) {
    if (!s.empty()) s += ';';
    s += n;
  };
  if (flags & kNearZeroOfU) add("NearZeroOfU");
  if (flags & kGammaPoleHandled) add("GammaPoleHandled");
  if (flags & kQuadratureWeak) add("QuadratureWeak");
  return s;
}

}  // namespace pcf

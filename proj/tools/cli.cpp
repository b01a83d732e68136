#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pcf/airy_uniform.hpp"
#include "pcf/dispatch.hpp"
#include "pcf/errors.hpp"
#include "pcf/validate.hpp"

namespace pcf::cli {

namespace {

constexpr double kSelftestThreshold = 5e-13;

struct OutputRecord {
  double a = 0.0;
  double z_re = 0.0, z_im = 0.0;
  double u_re = 0.0, u_im = 0.0;
  std::string method;
  double est_error = 0.0;
  std::string flags;
};

const char* const kRecordHeader = "a,z_re,z_im,u_re,u_im,method,est_error,flags";

std::string csv_row(const OutputRecord& r) {
  std::string s;
  for (double x : {r.a, r.z_re, r.z_im, r.u_re, r.u_im}) {
    s += format_double(x);
    s += ',';
  }
  s += r.method;
  s += ',';
  s += format_double(r.est_error);
  s += ',';
  s += r.flags;
  return s;
}

nlohmann::json to_json(const OutputRecord& r) {
  return {{"a", r.a},         {"z_re", r.z_re},     {"z_im", r.z_im},
          {"u_re", r.u_re},   {"u_im", r.u_im},     {"method", r.method},
          {"est_error", r.est_error}, {"flags", r.flags}};
}

std::string method_label(const EvalResult& r) {
  return std::string(method_name(r.method));
}

bool parse_real(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool parse_int(const std::string& s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

/// "re,im" or a bare real.
bool parse_complex(const std::string& s, cplx& out) {
  auto parts = split(s, ',');
  double re = 0.0, im = 0.0;
  if (parts.size() == 1) {
    if (!parse_real(parts[0], re)) return false;
  } else if (parts.size() == 2) {
    if (!parse_real(parts[0], re) || !parse_real(parts[1], im)) return false;
  } else {
    return false;
  }
  out = cplx(re, im);
  return true;
}

/// "a_min,a_max,na:z_min,z_max,nz". Counts are validated separately so that
/// an empty grid gets its own message.
bool parse_grid(const std::string& s, GridSpec& g) {
  auto halves = split(s, ':');
  if (halves.size() != 2) return false;
  auto pa = split(halves[0], ',');
  auto pz = split(halves[1], ',');
  if (pa.size() != 3 || pz.size() != 3) return false;
  return parse_real(pa[0], g.a_min) && parse_real(pa[1], g.a_max) && parse_int(pa[2], g.na) &&
         parse_real(pz[0], g.z_min) && parse_real(pz[1], g.z_max) && parse_int(pz[2], g.nz);
}

struct EvalArgs {
  std::string a_text, z_text;
  std::string method = "auto";
  std::string format = "csv";
  double tol = 1e-15;
};

int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err) {
  double a = 0.0;
  cplx z;
  if (!parse_real(args.a_text, a)) {
    err << "eval: cannot parse --a '" << args.a_text << "'\n";
    return kExitUsage;
  }
  if (!parse_complex(args.z_text, z)) {
    err << "eval: cannot parse --z '" << args.z_text << "' (expected re,im)\n";
    return kExitUsage;
  }
  EvalOptions opts;
  opts.tol = args.tol;
  if (args.method != "auto") {
    auto m = parse_method(args.method);
    if (!m) {
      err << "eval: unknown method '" << args.method << "'\n";
      return kExitUsage;
    }
    opts.force = *m;
  }

  EvalResult r;
  try {
    r = u_pcf(a, z, opts);
  } catch (const ConvergenceError& e) {
    err << "eval: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const std::exception& e) {
    // Any other library error means U is unavailable at this point.
    err << "eval: " << e.what() << '\n';
    return kExitDomain;
  }

  OutputRecord rec{a, z.real(), z.imag(), r.value.real(), r.value.imag(),
                   method_label(r), r.est_error, flag_names(r.flags)};
  if (args.format == "json") {
    out << to_json(rec).dump() << '\n';
  } else {
    out << kRecordHeader << '\n' << csv_row(rec) << '\n';
  }
  return kExitOk;
}

struct MapArgs {
  std::string grid;
  std::string check = "recurrence";
  std::string m1 = "integral", m2 = "airy";
  double arg = 0.7853981633974483;
  std::string out_path;
  int threads = 1;
};

int cmd_map(const MapArgs& args, std::ostream& out, std::ostream& err) {
  GridSpec g;
  g.arg = args.arg;
  if (!parse_grid(args.grid, g)) {
    err << "map: cannot parse --grid '" << args.grid << "' (expected a_min,a_max,na:z_min,z_max,nz)\n";
    return kExitUsage;
  }
  if (g.na < 1 || g.nz < 1) {
    err << "map: empty grid (na = " << g.na << ", nz = " << g.nz << ")\n";
    return kExitUsage;
  }

  std::optional<MethodTag> m1, m2;
  if (args.check == "agreement") {
    m1 = parse_method(args.m1);
    m2 = parse_method(args.m2);
    if (!m1 || !m2) {
      err << "map: --m1/--m2 must name maclaurin, integral, airy or poincare\n";
      return kExitUsage;
    }
  } else if (args.check != "recurrence") {
    err << "map: unknown --check '" << args.check << "'\n";
    return kExitUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!args.out_path.empty()) {
    file.open(args.out_path, std::ios::out | std::ios::trunc);
    if (!file) {
      err << "map: cannot write '" << args.out_path << "'\n";
      return kExitUnwritable;
    }
    sink = &file;
  }

  std::vector<MapRow> rows = m1 ? method_agreement_map(g, *m1, *m2, args.threads)
                                : recurrence_map(g, args.threads);

  *sink << kRecordHeader << ",residual,method2\n";
  for (const MapRow& row : rows) {
    OutputRecord rec{row.a, row.z.real(), row.z.imag(), row.u.real(), row.u.imag(),
                     row.tag1, row.est_error, flag_names(row.flags)};
    *sink << csv_row(rec) << ',' << format_double(row.value) << ',' << row.tag2 << '\n';
  }
  sink->flush();
  if (!*sink) {
    err << "map: write failed\n";
    return kExitUnwritable;
  }
  return kExitOk;
}

void print_point(std::ostream& out, const SweepPoint& p) {
  out << "  #" << p.index << " a=" << format_double(p.a) << " z=" << format_double(p.z.real()) << ','
      << format_double(p.z.imag()) << " residual=" << format_double(p.residual) << " methods="
      << method_name(p.methods[0]) << '/' << method_name(p.methods[1]) << '/'
      << method_name(p.methods[2]);
  if (p.flags) out << " flags=" << flag_names(p.flags);
  if (!p.error.empty()) out << " error=" << p.error;
  out << '\n';
}

struct SelftestArgs {
  std::int64_t samples = 10000;
  std::uint64_t seed = 42;
  std::string domain = "full";
  std::string method = "auto";
  bool no_fast_path = false;
  int threads = 1;
};

int cmd_selftest(const SelftestArgs& args, std::ostream& out, std::ostream& err) {
  SweepConfig cfg;
  cfg.n_samples = args.samples;
  cfg.seed = args.seed;
  cfg.threads = args.threads;
  cfg.maclaurin_fast_path = !args.no_fast_path;
  if (args.domain == "principal") {
    cfg.domain = ArgDomain::Principal;
  } else if (args.domain != "full") {
    err << "selftest: --domain must be principal or full\n";
    return kExitUsage;
  }
  if (args.method != "auto") {
    cfg.method_override = parse_method(args.method);
    if (!cfg.method_override) {
      err << "selftest: unknown method '" << args.method << "'\n";
      return kExitUsage;
    }
  }
  if (cfg.n_samples < 1) {
    err << "selftest: --samples must be positive\n";
    return kExitUsage;
  }

  SweepReport rep = run_sweep(cfg);
  out << "samples: " << rep.n_samples << '\n'
      << "seed: " << cfg.seed << '\n'
      << "domain: " << args.domain << '\n'
      << "max_residual: " << format_double(rep.max_residual) << '\n'
      << "q50: " << format_double(rep.q50) << '\n'
      << "q99: " << format_double(rep.q99) << '\n'
      << "q999: " << format_double(rep.q999) << '\n'
      << "fraction_above_5e-14: " << format_double(rep.frac_above_5em14) << '\n'
      << "flagged_near_zero: " << rep.n_flagged << " (" << format_double(rep.flagged_fraction)
      << ")\n"
      << "failed: " << rep.n_failed << '\n';
  out << "worst points:\n";
  for (const SweepPoint& p : rep.worst_points) print_point(out, p);
  if (!rep.failures.empty()) {
    out << "failures:\n";
    for (const SweepPoint& p : rep.failures) print_point(out, p);
  }

  const bool ok = rep.max_residual <= kSelftestThreshold && rep.n_failed == 0;
  out << "result: " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitOk : kExitSelftest;
}

struct TablesArgs {
  std::string action = "info";
  std::string out_path;
};

int cmd_tables(const TablesArgs& args, std::ostream& out, std::ostream& err) {
  if (args.action == "info") {
    const char* env = std::getenv("PCF_COEFF_CACHE");
    out << "cache: " << (env ? env : "(PCF_COEFF_CACHE not set)") << '\n';
    const CoeffTables& t = default_tables();
    out << "s_max: " << t.s_max << '\n' << "contour_nodes: " << t.n_nodes << '\n';
    return kExitOk;
  }
  if (args.action == "write") {
    if (args.out_path.empty()) {
      err << "tables write: --out is required\n";
      return kExitUsage;
    }
    {
      std::ofstream probe(args.out_path, std::ios::binary | std::ios::app);
      if (!probe) {
        err << "tables write: cannot write '" << args.out_path << "'\n";
        return kExitUnwritable;
      }
    }
    try {
      write_coeff_cache(default_tables(), args.out_path);
    } catch (const std::exception& e) {
      err << "tables write: " << e.what() << '\n';
      return kExitUnwritable;
    }
    out << "wrote " << args.out_path << '\n';
    return kExitOk;
  }
  err << "tables: action must be info or write\n";
  return kExitUsage;
}

}  // namespace

std::string format_double(double x) {
  if (x == 0.0) return std::signbit(x) ? "-0" : "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parabolic cylinder function U(a, z) for real a and complex z"};
  app.name(args.empty() ? "pcf" : args[0]);
  app.require_subcommand(1, 1);

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate U(a, z) at one point");
  eval->add_option("--a", ev.a_text, "order a (real)")->required();
  eval->add_option("--z", ev.z_text, "argument z as re,im")->required();
  eval->add_option("--method", ev.method, "auto|maclaurin|integral|airy|poincare")
      ->check(CLI::IsMember({"auto", "maclaurin", "integral", "airy", "poincare"}));
  eval->add_option("--format", ev.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  eval->add_option("--tol", ev.tol, "target relative tolerance")->check(CLI::PositiveNumber);

  MapArgs mp;
  auto* map = app.add_subcommand("map", "Accuracy map on a grid of (a, |z|) at fixed arg z");
  map->add_option("--grid", mp.grid, "a_min,a_max,na:z_min,z_max,nz")->required();
  map->add_option("--check", mp.check, "recurrence|agreement");
  map->add_option("--m1", mp.m1, "first method for --check agreement");
  map->add_option("--m2", mp.m2, "second method for --check agreement");
  map->add_option("--arg", mp.arg, "arg z in radians (default pi/4)");
  map->add_option("--out", mp.out_path, "CSV output path (default stdout)");
  map->add_option("--threads", mp.threads, "worker threads, 0 = all cores");

  SelftestArgs st;
  auto* selftest = app.add_subcommand("selftest", "Seeded recurrence-residual sweep");
  selftest->add_option("--samples", st.samples, "number of sample points");
  selftest->add_option("--seed", st.seed, "generator seed (mt19937_64)");
  selftest->add_option("--domain", st.domain, "principal|full");
  selftest->add_option("--method", st.method, "force one method in the principal domain");
  selftest->add_flag("--no-fast-path", st.no_fast_path, "skip the Maclaurin fast path");
  selftest->add_option("--threads", st.threads, "worker threads, 0 = all cores");

  TablesArgs tb;
  auto* tables = app.add_subcommand("tables", "Turning-point coefficient tables");
  tables->add_option("action", tb.action, "info|write");
  tables->add_option("--out", tb.out_path, "cache file for write");

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  if (eval->parsed()) return cmd_eval(ev, out, err);
  if (map->parsed()) return cmd_map(mp, out, err);
  if (selftest->parsed()) return cmd_selftest(st, out, err);
  return cmd_tables(tb, out, err);
}

}  // namespace pcf::cli

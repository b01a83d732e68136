#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pcf/dispatch.hpp"

namespace pcf {

using Evaluator = std::function<EvalResult(double a, cplx z)>;

/// u_pcf with default options.
Evaluator default_evaluator();

struct ResidualResult {
  /// |U(a-1) - z U(a) - (a+1/2) U(a+1)| / max(|U(a-1)|, |z U(a)|, |(a+1/2) U(a+1)|)
  double residual = 0.0;
  /// Union of the flags of the three evaluations.
  unsigned flags = 0;
  std::array<MethodTag, 3> methods{};  ///< for a-1, a, a+1
};

/// Throws whatever the evaluator throws, and DomainError when all three
/// terms vanish.
ResidualResult recurrence_residual(double a, cplx z, const Evaluator& eval = default_evaluator());

enum class ArgDomain {
  Full,       ///< arg z in (-pi, pi]
  Principal,  ///< arg z in [0, pi/2]
};

struct SweepConfig {
  std::int64_t n_samples = 10000;
  std::uint64_t seed = 42;
  double a_min = -30.0, a_max = 30.0;
  double absz_min = 0.0, absz_max = 30.0;
  ArgDomain domain = ArgDomain::Full;
  /// Forces one method for all principal-domain evaluations.
  std::optional<MethodTag> method_override;
  bool maclaurin_fast_path = true;
  /// 0 = hardware concurrency. Results do not depend on this.
  int threads = 1;
};

struct SweepPoint {
  std::int64_t index = 0;
  double a = 0.0;
  cplx z;
  double residual = 0.0;
  unsigned flags = 0;
  std::array<MethodTag, 3> methods{};
  std::string error;  ///< non-empty when an evaluation threw
};

struct SweepReport {
  std::int64_t n_samples = 0;
  std::int64_t n_flagged = 0;  ///< NearZeroOfU, excluded from the statistics
  std::int64_t n_failed = 0;   ///< evaluations that threw
  double max_residual = 0.0;
  double q50 = 0.0, q99 = 0.0, q999 = 0.0;
  double frac_above_5em14 = 0.0;
  double flagged_fraction = 0.0;
  std::vector<SweepPoint> worst_points;  ///< up to 10, largest residual first
  std::vector<SweepPoint> failures;      ///< up to 10
  double seconds = 0.0;
};

/// Deterministic sample i of a sweep: a, |z| and arg z uniform on their
/// ranges, drawn in order from std::mt19937_64(seed).
std::vector<SweepPoint> sweep_samples(const SweepConfig& cfg);

/// Runs the recurrence check on every sample. Identical configurations give
/// identical reports (apart from `seconds`) for any thread count.
SweepReport run_sweep(const SweepConfig& cfg);

/// Regular grid in a and |z| at a fixed arg z.
struct GridSpec {
  double a_min = -30.0, a_max = 30.0;
  int na = 50;
  double z_min = 0.0, z_max = 30.0;
  int nz = 50;
  double arg = 0.7853981633974483;
};

struct MapRow {
  double a = 0.0;
  cplx z;
  /// Relative difference (agreement) or residual (recurrence); -1 when a
  /// method could not be applied at this point.
  double value = 0.0;
  std::string tag1, tag2;
  cplx u;  ///< U(a, z) from the first method (0 if it failed)
  double est_error = 0.0;
  unsigned flags = 0;
};

/// Grid points in row-major order (a outer, |z| inner). Throws DomainError
/// for na < 1 or nz < 1.
std::vector<std::pair<double, cplx>> grid_points(const GridSpec& g);

/// rel_diff between two forced methods at every grid point.
std::vector<MapRow> method_agreement_map(const GridSpec& g, MethodTag m1, MethodTag m2, int threads = 1);

/// Recurrence residual with the default evaluator at every grid point.
std::vector<MapRow> recurrence_map(const GridSpec& g, int threads = 1);

/// Semicolon-joined flag names, e.g. "NearZeroOfU;GammaPoleHandled".
std::string flag_names(unsigned flags);

}  // namespace pcf

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pcf/numerics.hpp"

namespace pcf {

namespace detail {
struct MpCoeffData;
}

/// Variables of the Airy-type expansion at a scaled argument zt = z / sqrt(2u).
struct UniformMap {
  cplx ztilde;
  cplx zeta;
  cplx xi;    ///< (2/3) zeta^{3/2}, principal, cut along (-inf, 1]
  cplx beta;  ///< zt / sqrt(zt^2 - 1), cut along [-1, 1]
  /// sqrt(zt^2 - 1) on the branch that is positive for zt > 1 and continuous
  /// off (-inf, 1]; beta = ztilde / sqrt_m1.
  cplx sqrt_m1;
  /// zt at (or within 1e-8 of) the turning point: beta and xi^{-1} are
  /// unusable; zeta is still valid.
  bool singular = false;
};

/// Conformal maps for Re(zt) >= 0. Real zt in (0, 1) is evaluated as the
/// limit from the upper half plane. Throws DomainError for Re(zt) < 0.
UniformMap map_ztilde(cplx ztilde);

/// Coefficient data for the Airy-type expansions: exact E_s polynomials and
/// a_s, a~_s sequences, plus the values of Ahat_s, Bhat_s at the nodes of the
/// circle |t - 1| = 1 used by the Cauchy-integral evaluation.
struct CoeffTables {
  int s_max = 0;
  int n_nodes = 0;

  /// Index 1..2*s_max+1; index 0 unused.
  std::vector<RationalPoly> e_polys;
  std::vector<mpq_class> a_seq;
  std::vector<mpq_class> atilde_seq;
  std::vector<std::vector<double>> e_double;
  std::vector<double> a_double;
  std::vector<double> atilde_double;

  /// Nodes t_k = 1 + e_k with e_k = exp(2 pi i (k + 1/2) / N), stored split.
  std::vector<double> unit_re, unit_im;
  /// Row-major [s][k], split into real and imaginary parts.
  std::vector<double> ahat_re, ahat_im, bhat_re, bhat_im;

  /// Extended-precision copies of the exact data, used by ahat_bhat_at.
  std::shared_ptr<const detail::MpCoeffData> mp;

  cplx node(int k) const { return {1.0 + unit_re[k], unit_im[k]}; }
  cplx ahat(int s, int k) const { return {ahat_re[s * n_nodes + k], ahat_im[s * n_nodes + k]}; }
  cplx bhat(int s, int k) const { return {bhat_re[s * n_nodes + k], bhat_im[s * n_nodes + k]}; }
};

/// E_1 .. E_count generated exactly by the quadrature recursion.
std::vector<RationalPoly> e_polynomials(int count);

/// a_1 .. a_count (or a~) from the quadratic recursion with the given seed
/// a_1 = a_2 = seed.
std::vector<mpq_class> a_sequence(int count, const mpq_class& seed);

/// Builds all tables. Throws DomainError for s_max outside [1, 16] or
/// n_nodes < 16.
CoeffTables build_coeff_tables(int s_max = 16, int n_nodes = 2000);

/// Process-wide tables (s_max = 16, 2000 nodes), built once on first use.
/// When PCF_COEFF_CACHE names a readable cache file with a matching header the
/// contour values are loaded from it; otherwise they are computed and, if the
/// variable is set, written there.
const CoeffTables& default_tables();

/// Cache file I/O (little-endian float64 blob with a versioned header).
void write_coeff_cache(const CoeffTables& tables, const std::string& path);
/// Returns false when the file is absent or its header does not match.
bool read_coeff_cache(CoeffTables& tables, const std::string& path);

struct HatCoeffs {
  std::vector<cplx> ahat;  ///< Ahat_0 .. Ahat_smax
  std::vector<cplx> bhat;  ///< Bhat_0 .. Bhat_smax
  std::vector<cplx> a_raw; ///< A_s before the (zeta/(zt^2-1))^{1/4} factor
  std::vector<cplx> b_raw; ///< B_s before the {zeta (zt^2-1)}^{-1/4} factor
};

/// Ahat_s, Bhat_s at zt by composing the exp / cosh / sinh series of the
/// script-E functions. The composition runs in 266-bit arithmetic: the two
/// parts of each script-E function cancel by up to 40 digits for zt within
/// distance 1 of the turning point. Throws DomainError when |zt - 1| < 0.05.
HatCoeffs ahat_bhat_at(cplx ztilde, const CoeffTables& tables, int s_max);

enum class ABMethod { Direct, Contour };

struct ABPair {
  cplx calA;
  cplx calB;
  ABMethod method;
};

/// Below this distance from the turning point the Cauchy-integral route is used.
inline constexpr double kContourSwitchRadius = 0.5;

/// Truncated expansions A = sum Ahat_s u^{-2s}, B = u^{-4/3} sum Bhat_s u^{-2s}.
/// Requires u >= 20, Re(zt) >= 0 and |zt - 1| >= 0.05.
ABPair ab_direct(double u, cplx ztilde, const CoeffTables& tables);

/// Same sums with every coefficient replaced by its Cauchy integral over
/// |t - 1| = 1 (trapezoidal rule on the stored nodes). Requires u >= 20 and
/// |zt - 1| < 1.
ABPair ab_contour(double u, cplx ztilde, const CoeffTables& tables);

/// Direct or contour according to kContourSwitchRadius.
ABPair ab_eval(double u, cplx ztilde, const CoeffTables& tables);

/// w_l(u, zt) = Ai_l(u^{2/3} zeta) A + (d/dw Ai_l)(u^{2/3} zeta) B.
cplx w_function(int l, double u, cplx ztilde, const CoeffTables& tables);

/// U(-u/2, sqrt(2u) zt) for u >= 20, Re(zt) >= 0.
cplx u_airy_neg_a(double u, cplx ztilde, const CoeffTables& tables = default_tables());

/// U(u/2, z) for u >= 20, Im(z) >= 0 (through zt = -i z / sqrt(2u)).
cplx u_airy_pos_a(double u, cplx z, const CoeffTables& tables = default_tables());

using UEvaluator = std::function<cplx(double a, cplx z)>;

/// Delta_n(u, zt): the exact A(u, zt), assembled from two independent U values
/// and two Airy derivatives, minus the expansion truncated after s = n.
cplx delta_diag(int n, double u, cplx ztilde, const UEvaluator& independent_u,
                const CoeffTables& tables = default_tables());

}  // namespace pcf

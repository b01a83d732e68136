// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "pcf/kernels.hpp"

namespace pcf::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void cauchy_weights(std::span<const double> e_re, std::span<const double> e_im, cplx shift,
                    double scale, std::span<double> w_re, std::span<double> w_im) {
  const std::size_t n = e_re.size();
  const __m256d sr = _mm256_set1_pd(shift.real());
  const __m256d si = _mm256_set1_pd(shift.imag());
  const __m256d sc = _mm256_set1_pd(scale);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d er = _mm256_loadu_pd(e_re.data() + k);
    const __m256d ei = _mm256_loadu_pd(e_im.data() + k);
    const __m256d dr = _mm256_sub_pd(er, sr);
    const __m256d di = _mm256_sub_pd(ei, si);
    const __m256d den = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di));
    const __m256d inv = _mm256_div_pd(sc, den);
    const __m256d nr = _mm256_fmadd_pd(er, dr, _mm256_mul_pd(ei, di));
    const __m256d ni = _mm256_fmsub_pd(ei, dr, _mm256_mul_pd(er, di));
    _mm256_storeu_pd(w_re.data() + k, _mm256_mul_pd(nr, inv));
    _mm256_storeu_pd(w_im.data() + k, _mm256_mul_pd(ni, inv));
  }
  if (k < n) {
    scalar::cauchy_weights(e_re.subspan(k), e_im.subspan(k), shift, scale, w_re.subspan(k),
                           w_im.subspan(k));
  }
}

void row_dots(const double* rows_re, const double* rows_im, std::size_t n_rows, std::size_t n,
              const double* w_re, const double* w_im, cplx* out) {
  for (std::size_t r = 0; r < n_rows; ++r) {
    const double* xr = rows_re + r * n;
    const double* xi = rows_im + r * n;
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
      const __m256d ar = _mm256_loadu_pd(xr + k);
      const __m256d ai = _mm256_loadu_pd(xi + k);
      const __m256d br = _mm256_loadu_pd(w_re + k);
      const __m256d bi = _mm256_loadu_pd(w_im + k);
      acc_re = _mm256_fmadd_pd(ar, br, acc_re);
      acc_re = _mm256_fnmadd_pd(ai, bi, acc_re);
      acc_im = _mm256_fmadd_pd(ar, bi, acc_im);
      acc_im = _mm256_fmadd_pd(ai, br, acc_im);
    }
    double sum_re = hsum(acc_re), sum_im = hsum(acc_im);
    for (; k < n; ++k) {
      sum_re += xr[k] * w_re[k] - xi[k] * w_im[k];
      sum_im += xr[k] * w_im[k] + xi[k] * w_re[k];
    }
    out[r] = {sum_re, sum_im};
  }
}

}  // namespace pcf::kernels::avx2

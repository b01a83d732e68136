#pragma once

// Data-parallel inner loops of the Cauchy-integral coefficient evaluation.
//
// Each kernel has a portable scalar reference and, on x86-64, an AVX2+FMA
// variant. The active implementation is chosen once per process from the CPU
// features (PCF_SIMD=scalar forces the reference path); both are exported so
// tests can check them against each other.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace pcf::kernels {

using cplx = std::complex<double>;

/// w_k = scale * e_k / (e_k - shift) for unit vectors e_k given split into
/// real and imaginary parts. All spans have the same length.
using CauchyWeightsFn = void (*)(std::span<const double> e_re, std::span<const double> e_im,
                                 cplx shift, double scale, std::span<double> w_re,
                                 std::span<double> w_im);

/// out[r] = sum_k rows[r][k] * w_k for n_rows complex rows of length n stored
/// row-major in split form.
using RowDotsFn = void (*)(const double* rows_re, const double* rows_im, std::size_t n_rows,
                           std::size_t n, const double* w_re, const double* w_im, cplx* out);

struct KernelSet {
  std::string_view name;
  CauchyWeightsFn cauchy_weights;
  RowDotsFn row_dots;
};

const KernelSet& scalar_kernels();
/// nullptr when the AVX2 translation unit is absent or the CPU lacks AVX2/FMA.
const KernelSet* avx2_kernels();
/// Selected once; thread-safe.
const KernelSet& active_kernels();

namespace scalar {
void cauchy_weights(std::span<const double> e_re, std::span<const double> e_im, cplx shift,
                    double scale, std::span<double> w_re, std::span<double> w_im);
void row_dots(const double* rows_re, const double* rows_im, std::size_t n_rows, std::size_t n,
              const double* w_re, const double* w_im, cplx* out);
}  // namespace scalar

#if defined(PCF_HAVE_AVX2_TU)
namespace avx2 {
void cauchy_weights(std::span<const double> e_re, std::span<const double> e_im, cplx shift,
                    double scale, std::span<double> w_re, std::span<double> w_im);
void row_dots(const double* rows_re, const double* rows_im, std::size_t n_rows, std::size_t n,
              const double* w_re, const double* w_im, cplx* out);
}  // namespace avx2
#endif

}  // namespace pcf::kernels

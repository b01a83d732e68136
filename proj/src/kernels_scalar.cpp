#include "pcf/kernels.hpp"

namespace pcf::kernels::scalar {

void cauchy_weights(std::span<const double> e_re, std::span<const double> e_im, cplx shift,
                    double scale, std::span<double> w_re, std::span<double> w_im) {
  const double sr = shift.real(), si = shift.imag();
  for (std::size_t k = 0; k < e_re.size(); ++k) {
    const double dr = e_re[k] - sr;
    const double di = e_im[k] - si;
    const double inv = scale / (dr * dr + di * di);
    // e * conj(d) / |d|^2
    w_re[k] = (e_re[k] * dr + e_im[k] * di) * inv;
    w_im[k] = (e_im[k] * dr - e_re[k] * di) * inv;
  }
}

void row_dots(const double* rows_re, const double* rows_im, std::size_t n_rows, std::size_t n,
              const double* w_re, const double* w_im, cplx* out) {
  for (std::size_t r = 0; r < n_rows; ++r) {
    const double* xr = rows_re + r * n;
    const double* xi = rows_im + r * n;
    double acc_re = 0.0, acc_im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      acc_re += xr[k] * w_re[k] - xi[k] * w_im[k];
      acc_im += xr[k] * w_im[k] + xi[k] * w_re[k];
    }
    out[r] = {acc_re, acc_im};
  }
}

}  // namespace pcf::kernels::scalar

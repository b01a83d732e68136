#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "pcf/kernels.hpp"

using namespace pcf::kernels;

namespace {

struct Data {
  std::vector<double> e_re, e_im;
  std::vector<double> rows_re, rows_im;
};

Data make_data(std::size_t n, std::size_t n_rows, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Data x;
  for (std::size_t k = 0; k < n; ++k) {
    const double th = 2.0 * 3.141592653589793 * (k + 0.5) / n;
    x.e_re.push_back(std::cos(th));
    x.e_im.push_back(std::sin(th));
  }
  for (std::size_t i = 0; i < n * n_rows; ++i) {
    x.rows_re.push_back(d(gen) * 1e3);
    x.rows_im.push_back(d(gen));
  }
  return x;
}

}  // namespace

TEST(Kernels, ActiveSetIsKnown) {
  const KernelSet& k = active_kernels();
  EXPECT_TRUE(k.name == "scalar" || k.name == "avx2");
  const char* env = std::getenv("PCF_SIMD");
  if (env && std::string(env) == "scalar") {
    EXPECT_EQ(k.name, "scalar");
  }
}

TEST(Kernels, Avx2MatchesScalar) {
  const KernelSet* v = avx2_kernels();
  if (!v) GTEST_SKIP() << "AVX2 kernels unavailable on this machine";
  const KernelSet& s = scalar_kernels();

  // Odd lengths exercise the vector tail.
  for (std::size_t n : {std::size_t{1}, std::size_t{7}, std::size_t{64}, std::size_t{2003}}) {
    const std::size_t rows = 5;
    Data x = make_data(n, rows, n);
    const cplx shift(0.3, -0.45);
    std::vector<double> ws_re(n), ws_im(n), wv_re(n), wv_im(n);
    s.cauchy_weights(x.e_re, x.e_im, shift, 1.0 / n, ws_re, ws_im);
    v->cauchy_weights(x.e_re, x.e_im, shift, 1.0 / n, wv_re, wv_im);
    // A complex division is accurate to a few ulps normwise; the two
    // implementations may round differently (FMA, operation order).
    for (std::size_t k = 0; k < n; ++k) {
      const double mag = std::hypot(ws_re[k], ws_im[k]);
      EXPECT_LE(std::hypot(ws_re[k] - wv_re[k], ws_im[k] - wv_im[k]), 8.0 * 1.1e-16 * mag) << n << ":" << k;
    }

    std::vector<cplx> os(rows), ov(rows);
    s.row_dots(x.rows_re.data(), x.rows_im.data(), rows, n, ws_re.data(), ws_im.data(), os.data());
    v->row_dots(x.rows_re.data(), x.rows_im.data(), rows, n, ws_re.data(), ws_im.data(), ov.data());
    for (std::size_t r = 0; r < rows; ++r) {
      double abs_sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        abs_sum += std::abs(cplx(x.rows_re[r * n + k], x.rows_im[r * n + k])) *
                   std::abs(cplx(ws_re[k], ws_im[k]));
      }
      // Standard bound for two summation orders of n products.
      EXPECT_LE(std::abs(os[r] - ov[r]), 2.3e-16 * static_cast<double>(n + 2) * abs_sum) << n << ":" << r;
    }
  }
}

#include "pcf/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace pcf::kernels {

const KernelSet& scalar_kernels() {
  static const KernelSet set{"scalar", &scalar::cauchy_weights, &scalar::row_dots};
  return set;
}

const KernelSet* avx2_kernels() {
#if defined(PCF_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  static const bool usable = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const KernelSet set{"avx2", &avx2::cauchy_weights, &avx2::row_dots};
  return usable ? &set : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active_kernels() {
  static const KernelSet& chosen = []() -> const KernelSet& {
    const char* env = std::getenv("PCF_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_kernels();
    if (const KernelSet* k = avx2_kernels()) return *k;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace pcf::kernels

#include "nuspectral/simd.hpp"

#include <cstdlib>
#include <cstring>

namespace nuspectral::simd {

#if defined(NUSPECTRAL_BUILD_AVX2)
const Kernels* avx2_kernels_impl();
#endif

const Kernels* avx2() {
#if defined(NUSPECTRAL_BUILD_AVX2)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return avx2_kernels_impl();
  }
#endif
  return nullptr;
}

namespace {

const Kernels* select() {
  // NUSPECTRAL_SIMD=scalar forces the reference kernels.
  if (const char* env = std::getenv("NUSPECTRAL_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return &scalar();
  }
  if (const Kernels* k = avx2()) return k;
  return &scalar();
}

}  // namespace

const Kernels& active() {
  static const Kernels* k = select();
  return *k;
}

std::string active_name() {
  return &active() == &scalar() ? "scalar" : "avx2";
}

}  // namespace nuspectral::simd

#include "glhs/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

namespace glhs::simd {

#if defined(GLHS_HAVE_AVX2_KERNELS)
const KernelSet& avx2_kernel_set();
#endif

const KernelSet* avx2_kernels() {
#if defined(GLHS_HAVE_AVX2_KERNELS)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return supported ? &avx2_kernel_set() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

std::atomic<const KernelSet*> forced{nullptr};

const KernelSet& automatic() {
  static const KernelSet* chosen = [] {
    const char* env = std::getenv("GLHS_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return &scalar_kernels();
    const KernelSet* avx2 = avx2_kernels();
    return avx2 != nullptr ? avx2 : &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace

const KernelSet& active_kernels() {
  const KernelSet* f = forced.load(std::memory_order_acquire);
  return f != nullptr ? *f : automatic();
}

void force_kernels(const KernelSet* kernels) {
  forced.store(kernels, std::memory_order_release);
}

}  // namespace glhs::simd

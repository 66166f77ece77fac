// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "cpnorm/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#define CPNORM_X86 1
#else
#define CPNORM_X86 0
#endif

namespace cpnorm::kern {

#if CPNORM_X86
const Kernels& avx2_kernels();
#endif

namespace {

bool cpu_has_avx2_fma() {
#if CPNORM_X86
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Kernels* select_default() {
  const char* env = std::getenv("CPNORM_KERNELS");
  const std::string want = env ? env : "auto";
  if (want == "scalar") return &scalar_kernels();
#if CPNORM_X86
  if (want == "avx2" && cpu_has_avx2_fma()) return &avx2_kernels();
  if (want == "auto" && cpu_has_avx2_fma()) return &avx2_kernels();
#endif
  return &scalar_kernels();
}

std::atomic<const Kernels*>& slot() {
  static std::atomic<const Kernels*> table{select_default()};
  return table;
}

}  // namespace

bool backend_available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
      return cpu_has_avx2_fma();
  }
  return false;
}

const Kernels& active() { return *slot().load(std::memory_order_relaxed); }

void force_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::runtime_error("kernel backend unavailable on this CPU");
  }
  switch (b) {
    case Backend::scalar:
      slot().store(&scalar_kernels(), std::memory_order_relaxed);
      break;
    case Backend::avx2:
#if CPNORM_X86
      slot().store(&avx2_kernels(), std::memory_order_relaxed);
#endif
      break;
  }
}

void reset_backend() {
  slot().store(select_default(), std::memory_order_relaxed);
}

}  // namespace cpnorm::kern

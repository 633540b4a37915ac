#include <atomic>
#include <cstdlib>
#include <string>
#include <string_view>

#include "focus/error.hpp"
#include "focus/kernels.hpp"

namespace focus::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(FOCUS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

SimdLevel initial_level() {
  if (const char* forced = std::getenv("FOCUS_SIMD")) {
    if (std::string_view(forced) == "scalar") return SimdLevel::Scalar;
  }
  return detected_level();
}

std::atomic<const KernelSet*>& active_slot() {
  static std::atomic<const KernelSet*> slot{&kernels_for(initial_level())};
  return slot;
}

}  // namespace

std::string_view to_string(SimdLevel level) {
  switch (level) {
    case SimdLevel::Scalar: return "scalar";
    case SimdLevel::Avx2: return "avx2";
  }
  return "unknown";
}

bool is_available(SimdLevel level) {
  switch (level) {
    case SimdLevel::Scalar: return true;
    case SimdLevel::Avx2: {
      static const bool has = cpu_has_avx2();
      return has;
    }
  }
  return false;
}

SimdLevel detected_level() {
  return is_available(SimdLevel::Avx2) ? SimdLevel::Avx2 : SimdLevel::Scalar;
}

const KernelSet& kernels_for(SimdLevel level) {
  if (!is_available(level)) {
    throw Error(ErrorCode::InvalidArgument,
                "SIMD level '" + std::string(to_string(level)) + "' is not available");
  }
#if defined(FOCUS_HAVE_AVX2)
  if (level == SimdLevel::Avx2) return avx2_kernels();
#endif
  return scalar_kernels();
}

const KernelSet& active() { return *active_slot().load(std::memory_order_acquire); }

void set_active_level(SimdLevel level) {
  active_slot().store(&kernels_for(level), std::memory_order_release);
}

}  // namespace focus::kernels

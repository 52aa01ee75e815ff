#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_internal.hpp"
#include "morphofilter/error.hpp"

namespace morpho::kernels {
namespace {

Isa initial_isa() noexcept {
  if (const char* env = std::getenv("MORPHOFILTER_SIMD"); env != nullptr && std::string_view(env) == "scalar") {
    return Isa::Scalar;
  }
  return detected_isa();
}

std::atomic<Isa>& active_slot() noexcept {
  static std::atomic<Isa> slot{initial_isa()};
  return slot;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(MORPHOFILTER_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() noexcept { return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() noexcept { return active_slot().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!isa_supported(isa)) throw ConfigError("ISA not supported on this machine: " + std::string(to_string(isa)));
  active_slot().store(isa, std::memory_order_relaxed);
}

const KernelTable& table(Isa isa) {
  if (!isa_supported(isa)) throw ConfigError("ISA not supported on this machine: " + std::string(to_string(isa)));
#if defined(MORPHOFILTER_HAVE_AVX2)
  if (isa == Isa::Avx2) return detail::avx2_table();
#endif
  return detail::scalar_table();
}

const KernelTable& active() {
#if defined(MORPHOFILTER_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return detail::avx2_table();
#endif
  return detail::scalar_table();
}

}  // namespace morpho::kernels

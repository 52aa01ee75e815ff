#pragma once

// Pixelwise inner loops shared by the image, filter, contrast and metric
// modules. Each kernel has a scalar reference and an AVX2 variant; the
// variant is picked once at startup from CPUID and can be overridden with
// MORPHOFILTER_SIMD=scalar or set_isa().

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "morphofilter/image.hpp"

namespace morpho::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

bool isa_supported(Isa isa) noexcept;
/// Best ISA the CPU and the build both support.
Isa detected_isa() noexcept;
Isa active_isa() noexcept;
/// Throws ConfigError if `isa` is not supported on this machine.
void set_isa(Isa isa);

struct MinMax {
  Level lo;
  Level hi;
};

/// Pairwise mismatch counts against a reference labelling.
struct ErrorCounts {
  std::size_t first = 0;   // |{v : a(v) != ref(v)}|
  std::size_t second = 0;  // |{v : b(v) != ref(v)}|
  std::size_t both = 0;    // |{v : a(v) != ref(v) and b(v) != ref(v)}|
};

/// Class-mask overlap counts for one class id.
struct OverlapCounts {
  std::size_t pred = 0;
  std::size_t truth = 0;
  std::size_t both = 0;
};

/// One implementation of every kernel. All spans of a call share a length
/// unless stated otherwise; lookup tables must cover every index that
/// occurs in the input.
struct KernelTable {
  void (*complement)(std::span<const Level> in, Level max, std::span<Level> out);
  void (*lookup_u16)(std::span<const Level> in, std::span<const std::uint32_t> table, std::span<Level> out);
  void (*lookup_u32)(std::span<const std::uint32_t> in, std::span<const std::uint32_t> table, std::span<Level> out);
  MinMax (*minmax)(std::span<const Level> in);
  ErrorCounts (*count_errors)(std::span<const Level> a, std::span<const Level> b, std::span<const Level> ref);
  OverlapCounts (*count_overlap)(std::span<const Level> pred, std::span<const Level> truth, Level cls);
};

/// Table for a specific ISA; used by the equivalence tests. Throws
/// ConfigError if the ISA is unsupported.
const KernelTable& table(Isa isa);
/// Table for the active ISA.
const KernelTable& active();

inline void complement(std::span<const Level> in, Level max, std::span<Level> out) {
  active().complement(in, max, out);
}
inline void lookup(std::span<const Level> in, std::span<const std::uint32_t> table, std::span<Level> out) {
  active().lookup_u16(in, table, out);
}
inline void lookup(std::span<const std::uint32_t> in, std::span<const std::uint32_t> table, std::span<Level> out) {
  active().lookup_u32(in, table, out);
}
inline MinMax minmax(std::span<const Level> in) { return active().minmax(in); }
inline ErrorCounts count_errors(std::span<const Level> a, std::span<const Level> b, std::span<const Level> ref) {
  return active().count_errors(a, b, ref);
}
inline OverlapCounts count_overlap(std::span<const Level> pred, std::span<const Level> truth, Level cls) {
  return active().count_overlap(pred, truth, cls);
}

}  // namespace morpho::kernels

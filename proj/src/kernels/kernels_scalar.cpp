#include <algorithm>

#include "kernels_internal.hpp"

namespace morpho::kernels::detail {
namespace {

void complement(std::span<const Level> in, Level max, std::span<Level> out) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = static_cast<Level>(max - in[i]);
}

void lookup_u16(std::span<const Level> in, std::span<const std::uint32_t> table, std::span<Level> out) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = static_cast<Level>(table[in[i]]);
}

void lookup_u32(std::span<const std::uint32_t> in, std::span<const std::uint32_t> table, std::span<Level> out) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = static_cast<Level>(table[in[i]]);
}

MinMax minmax(std::span<const Level> in) {
  MinMax r{0xFFFF, 0};
  for (Level v : in) {
    r.lo = std::min(r.lo, v);
    r.hi = std::max(r.hi, v);
  }
  return r;
}

ErrorCounts count_errors(std::span<const Level> a, std::span<const Level> b, std::span<const Level> ref) {
  ErrorCounts c;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const bool ea = a[i] != ref[i];
    const bool eb = b[i] != ref[i];
    c.first += ea;
    c.second += eb;
    c.both += ea && eb;
  }
  return c;
}

OverlapCounts count_overlap(std::span<const Level> pred, std::span<const Level> truth, Level cls) {
  OverlapCounts c;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i] == cls;
    const bool t = truth[i] == cls;
    c.pred += p;
    c.truth += t;
    c.both += p && t;
  }
  return c;
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static constexpr KernelTable t{complement, lookup_u16, lookup_u32, minmax, count_errors, count_overlap};
  return t;
}

}  // namespace morpho::kernels::detail

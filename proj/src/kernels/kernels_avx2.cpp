// Compiled with -mavx2; only reached after a CPUID check.

#include <immintrin.h>

#include <algorithm>
#include <bit>

#include "kernels_internal.hpp"

namespace morpho::kernels::detail {
namespace {

constexpr std::size_t kLanes = 16;  // 16-bit lanes per 256-bit register

inline __m256i load(const Level* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(Level* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

// Two words per 16-bit lane in the byte mask.
inline std::size_t lanes_set(__m256i mask) {
  return static_cast<std::size_t>(std::popcount(static_cast<std::uint32_t>(_mm256_movemask_epi8(mask)))) / 2;
}

// Packs two vectors of 8 x u32 (each <= 0xFFFF) into 16 x u16 in order.
inline __m256i pack_u32(__m256i lo, __m256i hi) {
  return _mm256_permute4x64_epi64(_mm256_packus_epi32(lo, hi), 0xD8);
}

void complement(std::span<const Level> in, Level max, std::span<Level> out) {
  const __m256i vmax = _mm256_set1_epi16(static_cast<short>(max));
  std::size_t i = 0;
  for (; i + kLanes <= in.size(); i += kLanes) store(out.data() + i, _mm256_sub_epi16(vmax, load(in.data() + i)));
  for (; i < in.size(); ++i) out[i] = static_cast<Level>(max - in[i]);
}

void lookup_u16(std::span<const Level> in, std::span<const std::uint32_t> table, std::span<Level> out) {
  const int* base = reinterpret_cast<const int*>(table.data());
  std::size_t i = 0;
  for (; i + kLanes <= in.size(); i += kLanes) {
    const __m256i v = load(in.data() + i);
    const __m256i lo = _mm256_cvtepu16_epi32(_mm256_castsi256_si128(v));
    const __m256i hi = _mm256_cvtepu16_epi32(_mm256_extracti128_si256(v, 1));
    store(out.data() + i, pack_u32(_mm256_i32gather_epi32(base, lo, 4), _mm256_i32gather_epi32(base, hi, 4)));
  }
  for (; i < in.size(); ++i) out[i] = static_cast<Level>(table[in[i]]);
}

void lookup_u32(std::span<const std::uint32_t> in, std::span<const std::uint32_t> table, std::span<Level> out) {
  const int* base = reinterpret_cast<const int*>(table.data());
  std::size_t i = 0;
  for (; i + kLanes <= in.size(); i += kLanes) {
    const __m256i lo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in.data() + i));
    const __m256i hi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in.data() + i + 8));
    store(out.data() + i, pack_u32(_mm256_i32gather_epi32(base, lo, 4), _mm256_i32gather_epi32(base, hi, 4)));
  }
  for (; i < in.size(); ++i) out[i] = static_cast<Level>(table[in[i]]);
}

MinMax minmax(std::span<const Level> in) {
  MinMax r{0xFFFF, 0};
  std::size_t i = 0;
  if (in.size() >= kLanes) {
    __m256i vlo = _mm256_set1_epi16(static_cast<short>(0xFFFF));
    __m256i vhi = _mm256_setzero_si256();
    for (; i + kLanes <= in.size(); i += kLanes) {
      const __m256i v = load(in.data() + i);
      vlo = _mm256_min_epu16(vlo, v);
      vhi = _mm256_max_epu16(vhi, v);
    }
    alignas(32) Level lo[kLanes];
    alignas(32) Level hi[kLanes];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lo), vlo);
    _mm256_store_si256(reinterpret_cast<__m256i*>(hi), vhi);
    r.lo = *std::min_element(lo, lo + kLanes);
    r.hi = *std::max_element(hi, hi + kLanes);
  }
  for (; i < in.size(); ++i) {
    r.lo = std::min(r.lo, in[i]);
    r.hi = std::max(r.hi, in[i]);
  }
  return r;
}

ErrorCounts count_errors(std::span<const Level> a, std::span<const Level> b, std::span<const Level> ref) {
  ErrorCounts c;
  std::size_t i = 0;
  for (; i + kLanes <= ref.size(); i += kLanes) {
    const __m256i r = load(ref.data() + i);
    const __m256i oka = _mm256_cmpeq_epi16(load(a.data() + i), r);
    const __m256i okb = _mm256_cmpeq_epi16(load(b.data() + i), r);
    c.first += kLanes - lanes_set(oka);
    c.second += kLanes - lanes_set(okb);
    c.both += kLanes - lanes_set(_mm256_or_si256(oka, okb));
  }
  for (; i < ref.size(); ++i) {
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
  const __m256i vc = _mm256_set1_epi16(static_cast<short>(cls));
  std::size_t i = 0;
  for (; i + kLanes <= pred.size(); i += kLanes) {
    const __m256i p = _mm256_cmpeq_epi16(load(pred.data() + i), vc);
    const __m256i t = _mm256_cmpeq_epi16(load(truth.data() + i), vc);
    c.pred += lanes_set(p);
    c.truth += lanes_set(t);
    c.both += lanes_set(_mm256_and_si256(p, t));
  }
  for (; i < pred.size(); ++i) {
    const bool p = pred[i] == cls;
    const bool t = truth[i] == cls;
    c.pred += p;
    c.truth += t;
    c.both += p && t;
  }
  return c;
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static constexpr KernelTable t{complement, lookup_u16, lookup_u32, minmax, count_errors, count_overlap};
  return t;
}

}  // namespace morpho::kernels::detail

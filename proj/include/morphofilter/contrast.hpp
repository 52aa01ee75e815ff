#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "morphofilter/image.hpp"

namespace morpho {

/// How a lookup table was produced. Serializes as `identity`,
/// `gamma:<g>`, `bezier:<z>`; explicit tables print as `lut`.
struct TransformDescriptor {
  enum class Kind { Identity, Gamma, Bezier, Explicit };

  Kind kind = Kind::Identity;
  double parameter = 0.0;

  friend bool operator==(const TransformDescriptor&, const TransformDescriptor&) = default;
};

std::string to_string(const TransformDescriptor& d);
/// Throws ConfigError on unknown text, DomainError on an out-of-range
/// parameter.
TransformDescriptor parse_descriptor(std::string_view text);

/// Nondecreasing graylevel lookup table covering every level of one bit
/// depth.
class MonotoneTransform {
 public:
  /// Validates size 2^bit_depth, range and monotonicity (DomainError).
  MonotoneTransform(std::vector<Level> lut, int bit_depth, TransformDescriptor descriptor = {TransformDescriptor::Kind::Explicit, 0.0});

  static MonotoneTransform identity(int bit_depth);

  std::span<const Level> lut() const noexcept { return lut_; }
  int bit_depth() const noexcept { return bit_depth_; }
  const TransformDescriptor& descriptor() const noexcept { return descriptor_; }
  Level operator()(Level v) const noexcept { return lut_[v]; }

  friend bool operator==(const MonotoneTransform&, const MonotoneTransform&) = default;

 private:
  std::vector<Level> lut_;
  int bit_depth_;
  TransformDescriptor descriptor_;
};

inline constexpr double kGammaMin = 0.5;
inline constexpr double kGammaMax = 1.5;
inline constexpr std::array<double, 3> kBezierZChoices{0.0, 0.5, 0.75};

/// lut[i] = round((i / L)^gamma * L), L = 2^bit_depth - 1, half-up.
/// Throws DomainError for gamma <= 0.
MonotoneTransform gamma_lut(double gamma, int bit_depth);

/// Cubic Bezier contrast curve through (-1,-1), (-z,z), (z,-z), (1,1),
/// read as y(x) over [-1,1] and rescaled to [0, L]. Throws DomainError for
/// z outside [0, 1].
MonotoneTransform bezier_lut(double z, int bit_depth);

/// Builds the table a descriptor names. Explicit descriptors carry no
/// table and are rejected with ConfigError.
MonotoneTransform make_transform(const TransformDescriptor& d, int bit_depth);
MonotoneTransform parse_transform(std::string_view text, int bit_depth);

/// Pointwise application. Throws ConfigError on a bit-depth mismatch.
GrayImage apply_transform(const GrayImage& image, const MonotoneTransform& transform);

enum class SamplingPolicy { GammaRange, BezierSet };

/// Gamma uniform on [0.5, 1.5), or z uniform over {0, 0.5, 0.75}.
/// Deterministic in `seed` on every platform.
MonotoneTransform sample_transform(std::uint64_t seed, SamplingPolicy policy, int bit_depth);

}  // namespace morpho

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace morpho {

using Level = std::uint16_t;
using PixelIndex = std::uint32_t;

/// Extent per axis. 2D images have depth == 1.
struct Dims {
  std::size_t width = 1;
  std::size_t height = 1;
  std::size_t depth = 1;

  std::size_t count() const noexcept { return width * height * depth; }
  bool is_3d() const noexcept { return depth > 1; }

  friend bool operator==(const Dims&, const Dims&) = default;
};

std::string to_string(const Dims& dims);

enum class Connectivity { C4, C8, C6, C26 };

/// 4 for 2D, 6 for 3D.
Connectivity default_connectivity(const Dims& dims) noexcept;
bool is_compatible(Connectivity conn, const Dims& dims) noexcept;
std::string_view to_string(Connectivity conn) noexcept;
/// Accepts "4", "8", "6", "26". Throws ConfigError otherwise.
Connectivity parse_connectivity(std::string_view text);

/// Integer-valued 2D/3D raster, x fastest, then y, then z.
///
/// Values of an 8-bit image live in [0, 255], of a 16-bit image in
/// [0, 65535]; both are stored as 16-bit words. Instances are immutable
/// once constructed.
class GrayImage {
 public:
  GrayImage() = default;
  /// Zero-filled image.
  GrayImage(Dims dims, int bit_depth);
  /// Validates dims >= 1, bit_depth in {8, 16}, value count and range.
  GrayImage(Dims dims, int bit_depth, std::vector<Level> values);

  /// 1 x N row image, convenient for small literal cases.
  static GrayImage row(std::vector<Level> values, int bit_depth = 8);

  const Dims& dims() const noexcept { return dims_; }
  int bit_depth() const noexcept { return bit_depth_; }
  Level max_level() const noexcept { return static_cast<Level>((1u << bit_depth_) - 1u); }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  std::span<const Level> values() const noexcept { return values_; }
  Level operator[](std::size_t i) const noexcept { return values_[i]; }
  Level at(std::size_t x, std::size_t y, std::size_t z = 0) const;

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  Dims dims_{0, 0, 0};
  int bit_depth_ = 8;
  std::vector<Level> values_;
};

/// Precomputed neighbor stencil for one (dims, connectivity) pair.
///
/// The tree builders iterate neighbors through this rather than through
/// `neighbors()`, which allocates.
class Neighborhood {
 public:
  Neighborhood(const Dims& dims, Connectivity conn);

  const Dims& dims() const noexcept { return dims_; }
  Connectivity connectivity() const noexcept { return conn_; }

  /// Calls `fn(neighbor_index)` for every in-bounds neighbor of `index`,
  /// in ascending linear order.
  template <class Fn>
  void for_each(std::size_t index, Fn&& fn) const {
    const std::size_t plane = dims_.width * dims_.height;
    const std::size_t z = index / plane;
    const std::size_t rem = index - z * plane;
    const std::size_t y = rem / dims_.width;
    const std::size_t x = rem - y * dims_.width;
    for (const Offset& o : offsets_) {
      if ((o.dx < 0 && x == 0) || (o.dx > 0 && x + 1 >= dims_.width)) continue;
      if ((o.dy < 0 && y == 0) || (o.dy > 0 && y + 1 >= dims_.height)) continue;
      if ((o.dz < 0 && z == 0) || (o.dz > 0 && z + 1 >= dims_.depth)) continue;
      fn(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(index) + o.linear));
    }
  }

 private:
  struct Offset {
    int dx, dy, dz;
    std::ptrdiff_t linear;
  };

  Dims dims_;
  Connectivity conn_;
  std::vector<Offset> offsets_;
};

/// In-bounds neighbors of `index`, ascending, without duplicates.
/// Throws DomainError for an out-of-range index and ConfigError when the
/// connectivity does not match the image dimensionality.
std::vector<std::size_t> neighbors(const GrayImage& image, std::size_t index, Connectivity conn);

/// v -> (2^bit_depth - 1) - v.
GrayImage negate(const GrayImage& image);

}  // namespace morpho

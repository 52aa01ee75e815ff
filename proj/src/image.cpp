#include "morphofilter/image.hpp"

#include <algorithm>
#include <cstdlib>

#include "morphofilter/error.hpp"
#include "morphofilter/kernels.hpp"

namespace morpho {

std::string to_string(const Dims& dims) {
  std::string s = std::to_string(dims.width) + "x" + std::to_string(dims.height);
  if (dims.is_3d()) s += "x" + std::to_string(dims.depth);
  return s;
}

Connectivity default_connectivity(const Dims& dims) noexcept {
  return dims.is_3d() ? Connectivity::C6 : Connectivity::C4;
}

bool is_compatible(Connectivity conn, const Dims& dims) noexcept {
  const bool three_d = conn == Connectivity::C6 || conn == Connectivity::C26;
  return three_d == dims.is_3d();
}

std::string_view to_string(Connectivity conn) noexcept {
  switch (conn) {
    case Connectivity::C4: return "4";
    case Connectivity::C8: return "8";
    case Connectivity::C6: return "6";
    case Connectivity::C26: return "26";
  }
  return "?";
}

Connectivity parse_connectivity(std::string_view text) {
  if (text == "4") return Connectivity::C4;
  if (text == "8") return Connectivity::C8;
  if (text == "6") return Connectivity::C6;
  if (text == "26") return Connectivity::C26;
  throw ConfigError("unknown connectivity '" + std::string(text) + "' (expected 4, 8, 6 or 26)");
}

namespace {

void check_header(const Dims& dims, int bit_depth) {
  if (dims.width == 0 || dims.height == 0 || dims.depth == 0) {
    throw DomainError("image dims must be >= 1 on every axis, got " + to_string(dims));
  }
  if (dims.count() > 0xFFFFFFFFull) throw DomainError("image too large: " + to_string(dims));
  if (bit_depth != 8 && bit_depth != 16) {
    throw DomainError("bit depth must be 8 or 16, got " + std::to_string(bit_depth));
  }
}

}  // namespace

GrayImage::GrayImage(Dims dims, int bit_depth) : dims_(dims), bit_depth_(bit_depth) {
  check_header(dims, bit_depth);
  values_.assign(dims.count(), 0);
}

GrayImage::GrayImage(Dims dims, int bit_depth, std::vector<Level> values)
    : dims_(dims), bit_depth_(bit_depth), values_(std::move(values)) {
  check_header(dims, bit_depth);
  if (values_.size() != dims.count()) {
    throw DomainError("value count " + std::to_string(values_.size()) + " does not match dims " + to_string(dims));
  }
  if (bit_depth == 8 && kernels::minmax(values_).hi > 255) {
    throw DomainError("value exceeds 255 in an 8-bit image");
  }
}

GrayImage GrayImage::row(std::vector<Level> values, int bit_depth) {
  const std::size_t n = values.size();
  return GrayImage(Dims{n, 1, 1}, bit_depth, std::move(values));
}

Level GrayImage::at(std::size_t x, std::size_t y, std::size_t z) const {
  if (x >= dims_.width || y >= dims_.height || z >= dims_.depth) throw DomainError("pixel coordinate out of range");
  return values_[x + dims_.width * (y + dims_.height * z)];
}

Neighborhood::Neighborhood(const Dims& dims, Connectivity conn) : dims_(dims), conn_(conn) {
  if (!is_compatible(conn, dims)) {
    throw ConfigError(std::string(to_string(conn)) + "-connectivity is incompatible with dims " + to_string(dims));
  }
  const int zr = dims.is_3d() ? 1 : 0;
  const auto w = static_cast<std::ptrdiff_t>(dims.width);
  const auto plane = static_cast<std::ptrdiff_t>(dims.width * dims.height);
  for (int dz = -zr; dz <= zr; ++dz) {
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int manhattan = std::abs(dx) + std::abs(dy) + std::abs(dz);
        if (manhattan == 0) continue;
        const bool face_only = conn == Connectivity::C4 || conn == Connectivity::C6;
        if (face_only && manhattan != 1) continue;
        offsets_.push_back({dx, dy, dz, dz * plane + dy * w + dx});
      }
    }
  }
}

std::vector<std::size_t> neighbors(const GrayImage& image, std::size_t index, Connectivity conn) {
  if (index >= image.size()) {
    throw DomainError("pixel index " + std::to_string(index) + " out of range for " + std::to_string(image.size()) +
                      " pixels");
  }
  const Neighborhood hood(image.dims(), conn);
  std::vector<std::size_t> out;
  hood.for_each(index, [&](std::size_t n) { out.push_back(n); });
  std::sort(out.begin(), out.end());
  return out;
}

GrayImage negate(const GrayImage& image) {
  std::vector<Level> out(image.size());
  kernels::complement(image.values(), image.max_level(), out);
  return GrayImage(image.dims(), image.bit_depth(), std::move(out));
}

}  // namespace morpho

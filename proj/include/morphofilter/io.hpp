#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "morphofilter/image.hpp"
#include "morphofilter/tree.hpp"

namespace morpho::io {

enum class PgmEncoding { Ascii /* P2 */, Binary /* P5 */ };

/// Decodes P2 or P5 with maxval 255 (8-bit) or 65535 (16-bit). 16-bit P5
/// samples are big-endian on disk. Throws ParseError carrying the byte
/// offset of the failure.
GrayImage decode_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_pgm(const GrayImage& image, PgmEncoding encoding = PgmEncoding::Binary);

GrayImage read_pgm(const std::filesystem::path& path);
/// Throws ConfigError for a 3D image.
void write_pgm(const GrayImage& image, const std::filesystem::path& path, PgmEncoding encoding = PgmEncoding::Binary);

/// JSON sidecar of a raw volume:
///   {"dims": [w, h, d], "bit_depth": 8|16, "byte_order": "little", "spacing": [sx, sy, sz]}
/// `spacing` is optional; `byte_order` defaults to "little" and nothing
/// else is accepted.
struct VolumeHeader {
  Dims dims;
  int bit_depth = 8;
  std::optional<std::array<double, 3>> spacing;
};

VolumeHeader parse_volume_header(const std::string& json_text);
std::string format_volume_header(const VolumeHeader& header);

/// Raw little-endian samples, x fastest. Payload length must equal
/// dims.count() * bit_depth / 8.
GrayImage decode_volume(const VolumeHeader& header, std::span<const std::uint8_t> payload);
std::vector<std::uint8_t> encode_volume(const GrayImage& image);

GrayImage read_volume(const std::filesystem::path& data_path, const std::filesystem::path& header_path);
void write_volume(const GrayImage& image, const std::filesystem::path& data_path,
                  const std::filesystem::path& header_path,
                  std::optional<std::array<double, 3>> spacing = std::nullopt);

/// `foo.raw` -> `foo.json`.
std::filesystem::path sidecar_path(const std::filesystem::path& data_path);

/// Dispatch on extension: `.pgm` as PGM, `.raw` as a volume with its
/// sidecar. Anything else is a ParseError.
GrayImage read_image(const std::filesystem::path& path);
void write_image(const GrayImage& image, const std::filesystem::path& path);

/// Graphviz digraph, one node per tree node labelled "id@level area=a"
/// and one child -> parent edge per non-root node, in id order.
std::string export_dot(const ComponentTree& tree);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace morpho::io

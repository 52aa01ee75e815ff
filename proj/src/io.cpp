#include "morphofilter/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "morphofilter/error.hpp"

namespace morpho::io {
namespace {

// Cursor over a PNM header: whitespace- and comment-separated tokens.
class PnmCursor {
 public:
  explicit PnmCursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const noexcept { return pos_; }
  void advance(std::size_t n) noexcept { pos_ += n; }
  bool at_end() const noexcept { return pos_ >= bytes_.size(); }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  /// Reads an unsigned decimal token; `what` names the field in errors.
  std::uint64_t number(const char* what) {
    skip_space_and_comments();
    if (at_end()) throw ParseError(std::string("unexpected end of file reading ") + what, pos_);
    if (!std::isdigit(bytes_[pos_])) throw ParseError(std::string("expected a number for ") + what, pos_);
    std::uint64_t v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 0xFFFFFFFFull) throw ParseError(std::string("number too large for ") + what, pos_);
      ++pos_;
    }
    if (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#') {
      throw ParseError(std::string("malformed number for ") + what, pos_);
    }
    return v;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

int bit_depth_for_maxval(std::uint64_t maxval, std::size_t offset) {
  if (maxval == 255) return 8;
  if (maxval == 65535) return 16;
  throw ParseError("unsupported maxval " + std::to_string(maxval) + " (expected 255 or 65535)", offset);
}

}  // namespace

GrayImage decode_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw ParseError("not a PGM file (expected magic P2 or P5)", 0);
  }
  const bool binary = bytes[1] == '5';
  PnmCursor cur(bytes);
  cur.advance(2);
  if (!cur.at_end() && !std::isspace(bytes[cur.pos()]) && bytes[cur.pos()] != '#') {
    throw ParseError("malformed PGM magic", cur.pos());
  }
  const auto width = cur.number("width");
  const auto height = cur.number("height");
  if (width == 0 || height == 0) throw ParseError("PGM dims must be >= 1", cur.pos());
  const std::size_t maxval_pos = cur.pos();
  const auto maxval = cur.number("maxval");
  const int depth = bit_depth_for_maxval(maxval, maxval_pos);
  const std::size_t count = width * height;
  if (count > 0xFFFFFFFFull) throw ParseError("PGM raster too large", maxval_pos);
  std::vector<Level> values(count);

  if (binary) {
    // Exactly one whitespace byte separates the header from the raster.
    if (cur.at_end()) throw ParseError("missing raster after PGM header", cur.pos());
    cur.advance(1);
    const std::size_t bps = depth == 8 ? 1 : 2;
    const std::size_t need = count * bps;
    if (bytes.size() - cur.pos() < need) {
      throw ParseError("truncated PGM raster: need " + std::to_string(need) + " bytes, have " +
                           std::to_string(bytes.size() - cur.pos()),
                       bytes.size());
    }
    const std::uint8_t* p = bytes.data() + cur.pos();
    for (std::size_t i = 0; i < count; ++i) {
      values[i] = bps == 1 ? p[i] : static_cast<Level>((p[2 * i] << 8) | p[2 * i + 1]);
      if (values[i] > maxval) throw ParseError("sample exceeds maxval", cur.pos() + i * bps);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t at = cur.pos();
      const auto v = cur.number("sample");
      if (v > maxval) throw ParseError("sample exceeds maxval", at);
      values[i] = static_cast<Level>(v);
    }
  }
  return GrayImage(Dims{width, height, 1}, depth, std::move(values));
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& image, PgmEncoding encoding) {
  if (image.dims().is_3d()) throw ConfigError("PGM cannot hold a 3D image (" + to_string(image.dims()) + ")");
  const Dims& d = image.dims();
  std::ostringstream header;
  header << (encoding == PgmEncoding::Binary ? "P5" : "P2") << '\n'
         << d.width << ' ' << d.height << '\n'
         << image.max_level() << '\n';
  const std::string h = header.str();
  std::vector<std::uint8_t> out(h.begin(), h.end());

  if (encoding == PgmEncoding::Binary) {
    const bool wide = image.bit_depth() == 16;
    out.reserve(out.size() + image.size() * (wide ? 2 : 1));
    for (Level v : image.values()) {
      if (wide) out.push_back(static_cast<std::uint8_t>(v >> 8));
      out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    }
  } else {
    std::string body;
    for (std::size_t y = 0; y < d.height; ++y) {
      for (std::size_t x = 0; x < d.width; ++x) {
        if (x > 0) body += ' ';
        body += std::to_string(image[y * d.width + x]);
      }
      body += '\n';
    }
    out.insert(out.end(), body.begin(), body.end());
  }
  return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

GrayImage read_pgm(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return decode_pgm(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path.string(), e);
  }
}

void write_pgm(const GrayImage& image, const std::filesystem::path& path, PgmEncoding encoding) {
  write_file(path, encode_pgm(image, encoding));
}

VolumeHeader parse_volume_header(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("volume header is not valid JSON: ") + e.what(), e.byte);
  }
  if (!j.is_object()) throw ParseError("volume header must be a JSON object");

  VolumeHeader h;
  if (!j.contains("dims")) throw ParseError("volume header is missing field \"dims\"");
  const auto& dims = j["dims"];
  if (!dims.is_array() || dims.size() < 2 || dims.size() > 3) {
    throw ParseError("field \"dims\" must be an array of 2 or 3 positive integers");
  }
  std::array<std::size_t, 3> ext{1, 1, 1};
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (!dims[i].is_number_unsigned() || dims[i].get<std::uint64_t>() == 0) {
      throw ParseError("field \"dims\" must be an array of 2 or 3 positive integers");
    }
    ext[i] = dims[i].get<std::size_t>();
  }
  h.dims = Dims{ext[0], ext[1], ext[2]};

  if (!j.contains("bit_depth")) throw ParseError("volume header is missing field \"bit_depth\"");
  if (!j["bit_depth"].is_number_integer()) throw ParseError("field \"bit_depth\" must be 8 or 16");
  h.bit_depth = j["bit_depth"].get<int>();
  if (h.bit_depth != 8 && h.bit_depth != 16) throw ParseError("field \"bit_depth\" must be 8 or 16");

  if (j.contains("byte_order") && j["byte_order"] != "little") {
    throw ParseError("field \"byte_order\" must be \"little\"");
  }
  if (j.contains("spacing")) {
    const auto& sp = j["spacing"];
    if (!sp.is_array() || sp.size() != 3) throw ParseError("field \"spacing\" must be an array of 3 numbers");
    std::array<double, 3> s{};
    for (std::size_t i = 0; i < 3; ++i) {
      if (!sp[i].is_number()) throw ParseError("field \"spacing\" must be an array of 3 numbers");
      s[i] = sp[i].get<double>();
    }
    h.spacing = s;
  }
  return h;
}

std::string format_volume_header(const VolumeHeader& header) {
  nlohmann::ordered_json j;
  j["dims"] = {header.dims.width, header.dims.height, header.dims.depth};
  j["bit_depth"] = header.bit_depth;
  j["byte_order"] = "little";
  if (header.spacing) j["spacing"] = *header.spacing;
  return j.dump(2) + "\n";
}

GrayImage decode_volume(const VolumeHeader& header, std::span<const std::uint8_t> payload) {
  const std::size_t bps = header.bit_depth == 16 ? 2 : 1;
  const std::size_t count = header.dims.count();
  if (payload.size() != count * bps) {
    throw ParseError("volume payload length mismatch: expected " + std::to_string(count * bps) + " bytes for " +
                         to_string(header.dims) + " at " + std::to_string(header.bit_depth) + " bits, got " +
                         std::to_string(payload.size()),
                     payload.size() < count * bps ? payload.size() : count * bps);
  }
  std::vector<Level> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    values[i] = bps == 1 ? payload[i] : static_cast<Level>(payload[2 * i] | (payload[2 * i + 1] << 8));
  }
  return GrayImage(header.dims, header.bit_depth, std::move(values));
}

std::vector<std::uint8_t> encode_volume(const GrayImage& image) {
  std::vector<std::uint8_t> out;
  const bool wide = image.bit_depth() == 16;
  out.reserve(image.size() * (wide ? 2 : 1));
  for (Level v : image.values()) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    if (wide) out.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  return out;
}

GrayImage read_volume(const std::filesystem::path& data_path, const std::filesystem::path& header_path) {
  const auto header_bytes = read_file(header_path);
  VolumeHeader header;
  try {
    header = parse_volume_header(std::string(header_bytes.begin(), header_bytes.end()));
  } catch (const ParseError& e) {
    throw ParseError(header_path.string(), e);
  }
  try {
    return decode_volume(header, read_file(data_path));
  } catch (const ParseError& e) {
    throw ParseError(data_path.string(), e);
  }
}

void write_volume(const GrayImage& image, const std::filesystem::path& data_path,
                  const std::filesystem::path& header_path, std::optional<std::array<double, 3>> spacing) {
  write_file(data_path, encode_volume(image));
  const std::string h = format_volume_header(VolumeHeader{image.dims(), image.bit_depth(), spacing});
  write_file(header_path, std::span(reinterpret_cast<const std::uint8_t*>(h.data()), h.size()));
}

std::filesystem::path sidecar_path(const std::filesystem::path& data_path) {
  auto p = data_path;
  p.replace_extension(".json");
  return p;
}

GrayImage read_image(const std::filesystem::path& path) {
  const auto ext = path.extension();
  if (ext == ".pgm") return read_pgm(path);
  if (ext == ".raw") return read_volume(path, sidecar_path(path));
  throw ParseError("unsupported image extension '" + ext.string() + "' for " + path.string() +
                   " (expected .pgm or .raw)");
}

void write_image(const GrayImage& image, const std::filesystem::path& path) {
  const auto ext = path.extension();
  if (ext == ".pgm") return write_pgm(image, path);
  if (ext == ".raw") return write_volume(image, path, sidecar_path(path));
  throw ConfigError("unsupported output extension '" + ext.string() + "' for " + path.string());
}

std::string export_dot(const ComponentTree& tree) {
  std::string out = tree.kind() == TreeKind::Max ? "digraph maxtree {\n" : "digraph mintree {\n";
  for (NodeId id = 0; id < tree.node_count(); ++id) {
    out += "  n" + std::to_string(id) + " [label=\"" + std::to_string(id) + "@" + std::to_string(tree.level(id)) +
           " area=" + std::to_string(tree.area(id)) + "\"];\n";
  }
  for (NodeId id = 1; id < tree.node_count(); ++id) {
    out += "  n" + std::to_string(id) + " -> n" + std::to_string(tree.parent(id)) + ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace morpho::io

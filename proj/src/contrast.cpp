#include "morphofilter/contrast.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>

#include "morphofilter/error.hpp"
#include "morphofilter/kernels.hpp"

namespace morpho {
namespace {

double max_level_of(int bit_depth) {
  if (bit_depth != 8 && bit_depth != 16) throw DomainError("bit depth must be 8 or 16");
  return static_cast<double>((1u << bit_depth) - 1u);
}

Level quantize(double v, double max) {
  const double r = std::floor(v + 0.5);
  return static_cast<Level>(std::clamp(r, 0.0, max));
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string to_string(const TransformDescriptor& d) {
  switch (d.kind) {
    case TransformDescriptor::Kind::Identity: return "identity";
    case TransformDescriptor::Kind::Gamma: return "gamma:" + format_double(d.parameter);
    case TransformDescriptor::Kind::Bezier: return "bezier:" + format_double(d.parameter);
    case TransformDescriptor::Kind::Explicit: return "lut";
  }
  return "lut";
}

TransformDescriptor parse_descriptor(std::string_view text) {
  if (text == "identity") return {TransformDescriptor::Kind::Identity, 0.0};
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("unknown transform '" + std::string(text) + "' (expected identity, gamma:<g> or bezier:<z>)");
  }
  const std::string_view name = text.substr(0, colon);
  const std::string_view arg = text.substr(colon + 1);
  double value = 0.0;
  const auto res = std::from_chars(arg.data(), arg.data() + arg.size(), value);
  if (res.ec != std::errc{} || res.ptr != arg.data() + arg.size() || !std::isfinite(value)) {
    throw ConfigError("bad numeric parameter in transform '" + std::string(text) + "'");
  }
  if (name == "gamma") {
    if (value <= 0.0) throw DomainError("gamma must be > 0");
    return {TransformDescriptor::Kind::Gamma, value};
  }
  if (name == "bezier") {
    if (value < 0.0 || value > 1.0) throw DomainError("bezier z must lie in [0, 1]");
    return {TransformDescriptor::Kind::Bezier, value};
  }
  throw ConfigError("unknown transform '" + std::string(name) + "'");
}

MonotoneTransform::MonotoneTransform(std::vector<Level> lut, int bit_depth, TransformDescriptor descriptor)
    : lut_(std::move(lut)), bit_depth_(bit_depth), descriptor_(descriptor) {
  const double max = max_level_of(bit_depth);
  if (lut_.size() != static_cast<std::size_t>(max) + 1) throw DomainError("lookup table size must be 2^bit_depth");
  for (std::size_t i = 0; i < lut_.size(); ++i) {
    if (lut_[i] > max) throw DomainError("lookup table entry out of range");
    if (i > 0 && lut_[i] < lut_[i - 1]) throw DomainError("lookup table is not nondecreasing");
  }
}

MonotoneTransform MonotoneTransform::identity(int bit_depth) {
  const auto size = static_cast<std::size_t>(max_level_of(bit_depth)) + 1;
  std::vector<Level> lut(size);
  for (std::size_t i = 0; i < size; ++i) lut[i] = static_cast<Level>(i);
  return MonotoneTransform(std::move(lut), bit_depth, {TransformDescriptor::Kind::Identity, 0.0});
}

MonotoneTransform gamma_lut(double gamma, int bit_depth) {
  if (!(gamma > 0.0)) throw DomainError("gamma must be > 0");
  const double max = max_level_of(bit_depth);
  std::vector<Level> lut(static_cast<std::size_t>(max) + 1);
  for (std::size_t i = 0; i < lut.size(); ++i) {
    lut[i] = quantize(std::pow(static_cast<double>(i) / max, gamma) * max, max);
  }
  return MonotoneTransform(std::move(lut), bit_depth, {TransformDescriptor::Kind::Gamma, gamma});
}

MonotoneTransform bezier_lut(double z, int bit_depth) {
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError("bezier z must lie in [0, 1]");
  const double max = max_level_of(bit_depth);
  const std::size_t levels = static_cast<std::size_t>(max) + 1;

  // Sample the parametric curve; x(t) is nondecreasing for z <= 1.
  const std::size_t samples = 4 * levels;
  std::vector<double> cx(samples), cy(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(samples - 1);
    const double s = 1.0 - t;
    const double b0 = s * s * s;
    const double b1 = 3.0 * s * s * t;
    const double b2 = 3.0 * s * t * t;
    const double b3 = t * t * t;
    cx[k] = -b0 - b1 * z + b2 * z + b3;
    cy[k] = -b0 + b1 * z - b2 * z + b3;
  }

  std::vector<Level> lut(levels);
  std::size_t k = 1;
  for (std::size_t i = 0; i < levels; ++i) {
    const double x = 2.0 * static_cast<double>(i) / max - 1.0;
    while (k + 1 < samples && cx[k] < x) ++k;
    const double dx = cx[k] - cx[k - 1];
    const double y = dx > 0.0 ? cy[k - 1] + (x - cx[k - 1]) * (cy[k] - cy[k - 1]) / dx : cy[k];
    lut[i] = quantize((y + 1.0) / 2.0 * max, max);
  }
  for (std::size_t i = 1; i < levels; ++i) lut[i] = std::max(lut[i], lut[i - 1]);
  lut.front() = 0;
  lut.back() = static_cast<Level>(max);
  return MonotoneTransform(std::move(lut), bit_depth, {TransformDescriptor::Kind::Bezier, z});
}

MonotoneTransform make_transform(const TransformDescriptor& d, int bit_depth) {
  switch (d.kind) {
    case TransformDescriptor::Kind::Identity: return MonotoneTransform::identity(bit_depth);
    case TransformDescriptor::Kind::Gamma: return gamma_lut(d.parameter, bit_depth);
    case TransformDescriptor::Kind::Bezier: return bezier_lut(d.parameter, bit_depth);
    case TransformDescriptor::Kind::Explicit: break;
  }
  throw ConfigError("an explicit lookup table cannot be rebuilt from its descriptor");
}

MonotoneTransform parse_transform(std::string_view text, int bit_depth) {
  return make_transform(parse_descriptor(text), bit_depth);
}

GrayImage apply_transform(const GrayImage& image, const MonotoneTransform& transform) {
  if (image.bit_depth() != transform.bit_depth()) {
    throw ConfigError("transform bit depth " + std::to_string(transform.bit_depth()) + " does not match image bit depth " +
                      std::to_string(image.bit_depth()));
  }
  const std::vector<std::uint32_t> wide(transform.lut().begin(), transform.lut().end());
  std::vector<Level> out(image.size());
  kernels::lookup(image.values(), wide, out);
  return GrayImage(image.dims(), image.bit_depth(), std::move(out));
}

MonotoneTransform sample_transform(std::uint64_t seed, SamplingPolicy policy, int bit_depth) {
  // Raw engine output is specified by the standard; the distribution
  // classes are not, so the mapping to [0,1) and {0,1,2} is done here.
  std::mt19937_64 rng(seed);
  if (policy == SamplingPolicy::GammaRange) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return gamma_lut(kGammaMin + u * (kGammaMax - kGammaMin), bit_depth);
  }
  constexpr std::uint64_t choices = kBezierZChoices.size();
  constexpr std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % choices);
  std::uint64_t r = rng();
  while (r >= limit) r = rng();
  return bezier_lut(kBezierZChoices[r % choices], bit_depth);
}

}  // namespace morpho

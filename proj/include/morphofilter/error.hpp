#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace morpho {

/// Raised when an argument lies outside the domain an operation accepts
/// (out-of-range index, empty image, gamma <= 0, mismatched dims).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when otherwise valid inputs are combined inconsistently
/// (a 3D connectivity on a 2D image, an 8-bit LUT on a 16-bit image).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the readers. `offset()` is the byte position in the file at
/// which decoding failed, or npos when the failure is not positional
/// (e.g. a missing JSON field).
class ParseError : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  ParseError(const std::string& what, std::size_t offset = npos)
      : std::runtime_error(offset == npos ? what : what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  /// Prefixes `context` (typically a path) and keeps the inner offset.
  ParseError(const std::string& context, const ParseError& inner)
      : std::runtime_error(context + ": " + inner.what()), offset_(inner.offset_) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace morpho

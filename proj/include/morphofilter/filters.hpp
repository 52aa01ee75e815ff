#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "morphofilter/contrast.hpp"
#include "morphofilter/image.hpp"
#include "morphofilter/tree.hpp"

namespace morpho {

/// Per-node outcome of the area and sibling passes.
///
/// `surviving_children[n]` counts the children of n whose area exceeds
/// tau. The root is never removed: it has no parent to be compared
/// against, so both passes skip it.
struct RemovalMask {
  std::vector<bool> removed;
  std::vector<std::uint32_t> surviving_children;

  std::size_t removed_count() const noexcept;
};

inline constexpr std::uint32_t kDefaultTau2D = 50;
inline constexpr std::uint32_t kDefaultTau3D = 100;

std::uint32_t default_tau(const Dims& dims) noexcept;

/// Pass 1 removes every non-root node with area <= tau and counts the
/// rest against their parent. Pass 2 then removes every non-root node
/// whose parent kept exactly one such child, looking at the original
/// parent whether or not that parent was itself removed.
RemovalMask mark_removals(const ComponentTree& tree, std::uint32_t tau);

/// Every pixel takes the level of the nearest kept ancestor of its node
/// (the node itself if kept). Throws DomainError if the mask length does
/// not match the tree.
GrayImage reconstruct(const ComponentTree& tree, const RemovalMask& mask);

/// Tree, removal passes, reconstruction. Max gives the upper filter (never
/// brighter than the input), Min the lower one (never darker).
GrayImage structure_aware_filter(const GrayImage& image, std::uint32_t tau, TreeKind kind, Connectivity conn);
GrayImage structure_aware_filter(const GrayImage& image, std::uint32_t tau, TreeKind kind);

enum class AssignmentMode { Random, Fixed };

AssignmentMode parse_assignment_mode(std::string_view text);
std::string_view to_string(AssignmentMode mode) noexcept;

/// Two views of one image: one from the Max-tree filter, one from the
/// Min-tree filter.
struct DsaifPair {
  GrayImage view_a;
  GrayImage view_b;
  /// True when view_a holds the Max-tree (upper) result.
  bool a_is_upper = true;
  std::uint64_t seed = 0;

  const GrayImage& upper() const noexcept { return a_is_upper ? view_a : view_b; }
  const GrayImage& lower() const noexcept { return a_is_upper ? view_b : view_a; }
  /// "a=usaif" or "a=lsaif".
  std::string_view assignment() const noexcept { return a_is_upper ? "a=usaif" : "a=lsaif"; }
};

/// upper = filter(transform_a(x), tau, Max), lower = filter(transform_b(x),
/// tau, Min). Fixed mode puts the upper view in slot a; random mode flips
/// a coin seeded from `seed`. Throws ConfigError when a transform's bit
/// depth differs from the image's.
DsaifPair dsaif_pair(const GrayImage& image, std::uint32_t tau, const MonotoneTransform& transform_a,
                     const MonotoneTransform& transform_b, std::uint64_t seed, AssignmentMode mode,
                     Connectivity conn);
DsaifPair dsaif_pair(const GrayImage& image, std::uint32_t tau, const MonotoneTransform& transform_a,
                     const MonotoneTransform& transform_b, std::uint64_t seed, AssignmentMode mode);

/// The coin used by random mode, exposed so callers can predict slots.
bool upper_goes_to_slot_a(std::uint64_t seed) noexcept;

}  // namespace morpho

#include "morphofilter/filters.hpp"

#include <algorithm>
#include <string>

#include "morphofilter/error.hpp"
#include "morphofilter/kernels.hpp"
#include "morphofilter/seeding.hpp"

namespace morpho {

std::size_t RemovalMask::removed_count() const noexcept {
  return static_cast<std::size_t>(std::count(removed.begin(), removed.end(), true));
}

std::uint32_t default_tau(const Dims& dims) noexcept { return dims.is_3d() ? kDefaultTau3D : kDefaultTau2D; }

RemovalMask mark_removals(const ComponentTree& tree, std::uint32_t tau) {
  const std::size_t n = tree.node_count();
  RemovalMask mask{std::vector<bool>(n, false), std::vector<std::uint32_t>(n, 0)};
  for (NodeId id = 1; id < n; ++id) {
    if (tree.area(id) > tau) {
      ++mask.surviving_children[tree.parent(id)];
    } else {
      mask.removed[id] = true;
    }
  }
  for (NodeId id = 1; id < n; ++id) {
    if (mask.surviving_children[tree.parent(id)] == 1) mask.removed[id] = true;
  }
  return mask;
}

GrayImage reconstruct(const ComponentTree& tree, const RemovalMask& mask) {
  if (mask.removed.size() != tree.node_count()) {
    throw DomainError("removal mask has " + std::to_string(mask.removed.size()) + " entries for a tree of " +
                      std::to_string(tree.node_count()) + " nodes");
  }
  // Parents precede children, so one forward sweep resolves the climb to
  // the nearest kept ancestor for every node.
  std::vector<std::uint32_t> resolved(tree.node_count());
  resolved[0] = tree.level(0);
  for (NodeId id = 1; id < tree.node_count(); ++id) {
    resolved[id] = mask.removed[id] ? resolved[tree.parent(id)] : tree.level(id);
  }
  std::vector<Level> out(tree.pixel_count());
  kernels::lookup(tree.pixel_nodes(), resolved, out);
  return GrayImage(tree.dims(), tree.bit_depth(), std::move(out));
}

GrayImage structure_aware_filter(const GrayImage& image, std::uint32_t tau, TreeKind kind, Connectivity conn) {
  const ComponentTree tree = build_tree(image, kind, conn);
  return reconstruct(tree, mark_removals(tree, tau));
}

GrayImage structure_aware_filter(const GrayImage& image, std::uint32_t tau, TreeKind kind) {
  return structure_aware_filter(image, tau, kind, default_connectivity(image.dims()));
}

AssignmentMode parse_assignment_mode(std::string_view text) {
  if (text == "random") return AssignmentMode::Random;
  if (text == "fixed") return AssignmentMode::Fixed;
  throw ConfigError("unknown assignment mode '" + std::string(text) + "' (expected random or fixed)");
}

std::string_view to_string(AssignmentMode mode) noexcept { return mode == AssignmentMode::Random ? "random" : "fixed"; }

bool upper_goes_to_slot_a(std::uint64_t seed) noexcept { return (derive_seed(seed, 0xC0) >> 63) == 0; }

DsaifPair dsaif_pair(const GrayImage& image, std::uint32_t tau, const MonotoneTransform& transform_a,
                     const MonotoneTransform& transform_b, std::uint64_t seed, AssignmentMode mode,
                     Connectivity conn) {
  if (transform_a.bit_depth() != image.bit_depth() || transform_b.bit_depth() != image.bit_depth()) {
    throw ConfigError("transform bit depth does not match the image bit depth " + std::to_string(image.bit_depth()));
  }
  GrayImage upper = structure_aware_filter(apply_transform(image, transform_a), tau, TreeKind::Max, conn);
  GrayImage lower = structure_aware_filter(apply_transform(image, transform_b), tau, TreeKind::Min, conn);
  const bool a_is_upper = mode == AssignmentMode::Fixed || upper_goes_to_slot_a(seed);
  if (a_is_upper) return DsaifPair{std::move(upper), std::move(lower), true, seed};
  return DsaifPair{std::move(lower), std::move(upper), false, seed};
}

DsaifPair dsaif_pair(const GrayImage& image, std::uint32_t tau, const MonotoneTransform& transform_a,
                     const MonotoneTransform& transform_b, std::uint64_t seed, AssignmentMode mode) {
  return dsaif_pair(image, tau, transform_a, transform_b, seed, mode, default_connectivity(image.dims()));
}

}  // namespace morpho

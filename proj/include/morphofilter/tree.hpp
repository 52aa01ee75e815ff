#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "morphofilter/image.hpp"

namespace morpho {

using NodeId = std::uint32_t;

enum class TreeKind { Max, Min };

/// Max-tree or Min-tree of a GrayImage.
///
/// Each node is one connected component of an upper (Max) or lower (Min)
/// level set, stored at the single level where that pixel set first
/// appears; no two nodes on a parent chain share a level. Nodes are
/// numbered so that the root is 0 and every other node has a smaller id
/// than its children, which lets passes over the tree run as single
/// forward or backward sweeps.
class ComponentTree {
 public:
  struct LevelBounds {
    Level lo;
    Level hi;
  };

  /// Checks the structural invariants that are cheap to verify (ordering,
  /// array lengths, id ranges). Throws DomainError on violation.
  ComponentTree(TreeKind kind, Dims dims, int bit_depth, Connectivity conn, std::vector<NodeId> node_parent,
                std::vector<Level> node_level, std::vector<std::uint32_t> node_area,
                std::vector<NodeId> pixel_node);

  TreeKind kind() const noexcept { return kind_; }
  const Dims& dims() const noexcept { return dims_; }
  int bit_depth() const noexcept { return bit_depth_; }
  Connectivity connectivity() const noexcept { return conn_; }

  std::size_t node_count() const noexcept { return parent_.size(); }
  std::size_t pixel_count() const noexcept { return pixel_node_.size(); }
  static constexpr NodeId root() noexcept { return 0; }

  NodeId parent(NodeId n) const noexcept { return parent_[n]; }
  Level level(NodeId n) const noexcept { return level_[n]; }
  /// Pixel count of the node's full component, descendants included.
  std::uint32_t area(NodeId n) const noexcept { return area_[n]; }
  /// Smallest node containing pixel `v`.
  NodeId pixel_node(std::size_t v) const noexcept { return pixel_node_[v]; }

  std::span<const NodeId> parents() const noexcept { return parent_; }
  std::span<const Level> levels() const noexcept { return level_; }
  std::span<const std::uint32_t> areas() const noexcept { return area_; }
  std::span<const NodeId> pixel_nodes() const noexcept { return pixel_node_; }

  /// (h_min, h_max) over the image the tree was built from.
  LevelBounds level_bounds() const noexcept { return bounds_; }

 private:
  TreeKind kind_;
  Dims dims_;
  int bit_depth_;
  Connectivity conn_;
  std::vector<NodeId> parent_;
  std::vector<Level> level_;
  std::vector<std::uint32_t> area_;
  std::vector<NodeId> pixel_node_;
  LevelBounds bounds_{0, 0};
};

/// Union-find construction, quasi-linear in the pixel count.
/// Throws DomainError for an empty image, ConfigError for a connectivity
/// that does not fit the image.
ComponentTree build_max_tree(const GrayImage& image, Connectivity conn);
ComponentTree build_max_tree(const GrayImage& image);

/// Max-tree of the negated image with levels mapped back.
ComponentTree build_min_tree(const GrayImage& image, Connectivity conn);
ComponentTree build_min_tree(const GrayImage& image);

ComponentTree build_tree(const GrayImage& image, TreeKind kind, Connectivity conn);

/// Reference construction straight from the definition: threshold at
/// every occurring level, flood-fill each level set, link components by
/// inclusion. Quadratic-ish; meant for small test images only.
ComponentTree oracle_tree(const GrayImage& image, TreeKind kind, Connectivity conn);

/// True iff a node bijection exists that preserves parenthood and maps the
/// pixel partitions onto each other; with `compare_levels`, node levels
/// must match too. Trees over different pixel counts are never
/// isomorphic. Throws DomainError when the pixel counts agree but the
/// dims do not, since the pixel correspondence is then meaningless.
bool tree_isomorphic(const ComponentTree& a, const ComponentTree& b, bool compare_levels);

/// Number of children per node.
std::vector<std::uint32_t> child_counts(const ComponentTree& tree);

/// Nodes without children. A single-node tree has one leaf.
std::size_t leaf_count(const ComponentTree& tree);

}  // namespace morpho

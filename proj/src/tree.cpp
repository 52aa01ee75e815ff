#include "morphofilter/tree.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "morphofilter/error.hpp"
#include "morphofilter/kernels.hpp"

namespace morpho {

ComponentTree::ComponentTree(TreeKind kind, Dims dims, int bit_depth, Connectivity conn,
                             std::vector<NodeId> node_parent, std::vector<Level> node_level,
                             std::vector<std::uint32_t> node_area, std::vector<NodeId> pixel_node)
    : kind_(kind),
      dims_(dims),
      bit_depth_(bit_depth),
      conn_(conn),
      parent_(std::move(node_parent)),
      level_(std::move(node_level)),
      area_(std::move(node_area)),
      pixel_node_(std::move(pixel_node)) {
  const std::size_t n = parent_.size();
  if (n == 0) throw DomainError("component tree needs at least one node");
  if (level_.size() != n || area_.size() != n) throw DomainError("component tree node arrays differ in length");
  if (pixel_node_.size() != dims_.count()) throw DomainError("pixel map length does not match dims");
  if (parent_[0] != 0) throw DomainError("node 0 must be the root");
  for (std::size_t i = 1; i < n; ++i) {
    if (parent_[i] >= i) throw DomainError("node " + std::to_string(i) + " is not ordered after its parent");
  }
  for (NodeId p : pixel_node_) {
    if (p >= n) throw DomainError("pixel maps to a nonexistent node");
  }
  const auto mm = kernels::minmax(level_);
  bounds_ = {mm.lo, mm.hi};
}

namespace {

constexpr PixelIndex kUnset = std::numeric_limits<PixelIndex>::max();

// Pixels ordered by decreasing level, ties by ascending index.
std::vector<PixelIndex> sort_descending(std::span<const Level> values, int bit_depth) {
  const std::size_t levels = std::size_t{1} << bit_depth;
  std::vector<std::size_t> start(levels + 1, 0);
  for (Level v : values) ++start[levels - 1 - v];
  std::size_t acc = 0;
  for (std::size_t b = 0; b < levels; ++b) {
    const std::size_t c = start[b];
    start[b] = acc;
    acc += c;
  }
  std::vector<PixelIndex> order(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    order[start[levels - 1 - values[i]]++] = static_cast<PixelIndex>(i);
  }
  return order;
}

// Union-find cell: the forest link, and for a root the pixel currently
// heading its component in parent[].
struct UfCell {
  PixelIndex zpar;
  PixelIndex repr;
};

PixelIndex find_root(std::vector<UfCell>& uf, PixelIndex p) {
  // Path halving.
  while (uf[p].zpar != p) {
    uf[p].zpar = uf[uf[p].zpar].zpar;
    p = uf[p].zpar;
  }
  return p;
}

// Randomized linking: the root with the larger pseudo-random priority
// survives a union. Balances like union by rank without storing ranks.
constexpr std::uint32_t link_priority(PixelIndex p) { return p * 0x9E3779B1u; }

// How far ahead in `order` the passes below prefetch.
constexpr std::size_t kPrefetchDistance = 8;

/// Max-tree with levels taken from `values`.
ComponentTree build_max_impl(const GrayImage& image, Connectivity conn, TreeKind kind,
                             std::span<const Level> stored_levels) {
  if (image.empty()) throw DomainError("cannot build a tree over an image with zero pixels");
  const Neighborhood hood(image.dims(), conn);
  const std::span<const Level> f = image.values();
  const std::size_t n = f.size();
  const std::size_t row = image.dims().width;
  const std::size_t plane = image.dims().width * image.dims().height;

  const std::vector<PixelIndex> order = sort_descending(f, image.bit_depth());

  // parent[] ends up as the canonical parent forest. uf[] is the
  // union-find forest (zpar == kUnset until a pixel is processed),
  // balanced by randomized linking.
  std::vector<PixelIndex> parent(n);
  {
    std::vector<UfCell> uf(n, UfCell{kUnset, 0});
    auto prefetch = [&](std::size_t a) {
      const UfCell* u = uf.data();
      __builtin_prefetch(u + a);
      __builtin_prefetch(parent.data() + a);
      if (a >= row) __builtin_prefetch(u + a - row);
      if (a + row < n) __builtin_prefetch(u + a + row);
      if (plane < n) {
        if (a >= plane) __builtin_prefetch(u + a - plane);
        if (a + plane < n) __builtin_prefetch(u + a + plane);
      }
    };
    for (std::size_t i = 0; i < n; ++i) {
      if (i + kPrefetchDistance < n) prefetch(order[i + kPrefetchDistance]);
      const PixelIndex p = order[i];
      parent[p] = p;
      uf[p] = {p, p};
      PixelIndex zp = p;
      hood.for_each(p, [&](std::size_t q) {
        if (uf[q].zpar == kUnset) return;
        PixelIndex zq = find_root(uf, static_cast<PixelIndex>(q));
        if (zq == zp) return;
        parent[uf[zq].repr] = p;
        if (link_priority(zp) < link_priority(zq)) std::swap(zp, zq);
        uf[zq].zpar = zp;
        uf[zp].repr = p;
      });
    }
  }

  // Number nodes root-first. parent[] is overwritten by the pixel->node
  // map as we go. A pixel's parent was processed after it, so it is
  // numbered first; a same-level parent just shares its node, which makes
  // a separate canonicalization pass unnecessary.
  std::vector<NodeId> node_parent;
  std::vector<Level> node_level;
  std::vector<PixelIndex>& pixel_node = parent;
  for (std::size_t i = n; i-- > 0;) {
    if (i >= 2 * kPrefetchDistance) __builtin_prefetch(parent.data() + order[i - 2 * kPrefetchDistance]);
    if (i >= kPrefetchDistance) {
      // Not yet numbered, so this still holds a pixel index.
      const PixelIndex ahead = parent[order[i - kPrefetchDistance]];
      __builtin_prefetch(parent.data() + ahead);
      __builtin_prefetch(f.data() + ahead);
    }
    const PixelIndex p = order[i];
    const PixelIndex q = parent[p];
    if (q == p) {
      pixel_node[p] = static_cast<NodeId>(node_parent.size());
      node_parent.push_back(pixel_node[p]);
      node_level.push_back(stored_levels[p]);
    } else if (f[q] != f[p]) {
      const NodeId up = pixel_node[q];
      pixel_node[p] = static_cast<NodeId>(node_parent.size());
      node_parent.push_back(up);
      node_level.push_back(stored_levels[p]);
    } else {
      pixel_node[p] = pixel_node[q];
    }
  }

  std::vector<std::uint32_t> area(node_parent.size(), 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (v + kPrefetchDistance < n) __builtin_prefetch(area.data() + pixel_node[v + kPrefetchDistance]);
    ++area[pixel_node[v]];
  }
  for (std::size_t id = area.size(); id-- > 1;) area[node_parent[id]] += area[id];

  return ComponentTree(kind, image.dims(), image.bit_depth(), conn, std::move(node_parent), std::move(node_level),
                       std::move(area), std::move(pixel_node));
}

}  // namespace

ComponentTree build_max_tree(const GrayImage& image, Connectivity conn) {
  return build_max_impl(image, conn, TreeKind::Max, image.values());
}

ComponentTree build_max_tree(const GrayImage& image) {
  return build_max_tree(image, default_connectivity(image.dims()));
}

ComponentTree build_min_tree(const GrayImage& image, Connectivity conn) {
  if (image.empty()) throw DomainError("cannot build a tree over an image with zero pixels");
  return build_max_impl(negate(image), conn, TreeKind::Min, image.values());
}

ComponentTree build_min_tree(const GrayImage& image) {
  return build_min_tree(image, default_connectivity(image.dims()));
}

ComponentTree build_tree(const GrayImage& image, TreeKind kind, Connectivity conn) {
  return kind == TreeKind::Max ? build_max_tree(image, conn) : build_min_tree(image, conn);
}

bool tree_isomorphic(const ComponentTree& a, const ComponentTree& b, bool compare_levels) {
  if (a.pixel_count() != b.pixel_count()) return false;
  if (a.dims() != b.dims()) {
    throw DomainError("trees built over different dims: " + to_string(a.dims()) + " vs " + to_string(b.dims()));
  }
  if (a.node_count() != b.node_count()) return false;

  const std::size_t nodes = a.node_count();
  std::vector<NodeId> a_to_b(nodes, std::numeric_limits<NodeId>::max());
  std::vector<NodeId> b_to_a(nodes, std::numeric_limits<NodeId>::max());
  for (std::size_t v = 0; v < a.pixel_count(); ++v) {
    const NodeId na = a.pixel_node(v);
    const NodeId nb = b.pixel_node(v);
    if (a_to_b[na] == std::numeric_limits<NodeId>::max() && b_to_a[nb] == std::numeric_limits<NodeId>::max()) {
      a_to_b[na] = nb;
      b_to_a[nb] = na;
    } else if (a_to_b[na] != nb || b_to_a[nb] != na) {
      return false;
    }
  }
  for (std::size_t na = 0; na < nodes; ++na) {
    // Every node of a canonical tree owns at least one pixel.
    const NodeId nb = a_to_b[na];
    if (nb == std::numeric_limits<NodeId>::max()) return false;
    if (b.parent(nb) != a_to_b[a.parent(static_cast<NodeId>(na))]) return false;
    if (compare_levels && a.level(static_cast<NodeId>(na)) != b.level(nb)) return false;
  }
  return true;
}

std::vector<std::uint32_t> child_counts(const ComponentTree& tree) {
  std::vector<std::uint32_t> counts(tree.node_count(), 0);
  for (std::size_t id = 1; id < tree.node_count(); ++id) ++counts[tree.parent(static_cast<NodeId>(id))];
  return counts;
}

std::size_t leaf_count(const ComponentTree& tree) {
  const auto counts = child_counts(tree);
  return static_cast<std::size_t>(std::count(counts.begin(), counts.end(), 0u));
}

}  // namespace morpho

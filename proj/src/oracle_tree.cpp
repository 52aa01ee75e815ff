// Literal threshold-decomposition builder. Independent of the union-find
// path in tree.cpp: it shares only neighbors() and the ComponentTree type.

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include "morphofilter/error.hpp"
#include "morphofilter/tree.hpp"

namespace morpho {
namespace {

constexpr int kNoLabel = -1;

struct LevelSetLabels {
  std::vector<int> label;               // component id per pixel, kNoLabel outside the set
  std::vector<std::size_t> size;        // pixels per component
  std::vector<bool> has_exact_level;    // component contains a pixel valued exactly h
  std::vector<std::size_t> min_pixel;   // smallest pixel index per component
};

LevelSetLabels label_level_set(const GrayImage& image, TreeKind kind, Level h, Connectivity conn) {
  const std::size_t n = image.size();
  auto inside = [&](std::size_t v) { return kind == TreeKind::Max ? image[v] >= h : image[v] <= h; };

  LevelSetLabels out;
  out.label.assign(n, kNoLabel);
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (!inside(seed) || out.label[seed] != kNoLabel) continue;
    const int id = static_cast<int>(out.size.size());
    out.size.push_back(0);
    out.has_exact_level.push_back(false);
    out.min_pixel.push_back(seed);
    std::deque<std::size_t> queue{seed};
    out.label[seed] = id;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      ++out.size[id];
      if (image[v] == h) out.has_exact_level[id] = true;
      for (std::size_t w : neighbors(image, v, conn)) {
        if (inside(w) && out.label[w] == kNoLabel) {
          out.label[w] = id;
          queue.push_back(w);
        }
      }
    }
  }
  return out;
}

}  // namespace

ComponentTree oracle_tree(const GrayImage& image, TreeKind kind, Connectivity conn) {
  if (image.empty()) throw DomainError("cannot build a tree over an image with zero pixels");
  if (!is_compatible(conn, image.dims())) throw ConfigError("connectivity incompatible with image dims");

  // Occurring levels from the leaves towards the root.
  std::set<Level> occurring(image.values().begin(), image.values().end());
  std::vector<Level> levels(occurring.begin(), occurring.end());
  if (kind == TreeKind::Max) std::reverse(levels.begin(), levels.end());

  std::vector<LevelSetLabels> sets;
  sets.reserve(levels.size());
  for (Level h : levels) sets.push_back(label_level_set(image, kind, h, conn));

  // A node is a (level step, component) whose component contains a pixel
  // of exactly that level; other components repeat a set seen earlier.
  struct Node {
    std::size_t step;
    int component;
    std::size_t parent_key = 0;
  };
  std::map<std::pair<std::size_t, int>, std::size_t> key_of;
  std::vector<Node> nodes;
  for (std::size_t s = 0; s < levels.size(); ++s) {
    for (int c = 0; c < static_cast<int>(sets[s].size.size()); ++c) {
      if (!sets[s].has_exact_level[c]) continue;
      key_of[{s, c}] = nodes.size();
      nodes.push_back({s, c});
    }
  }

  // Parent: first strictly larger component further down the threshold
  // sequence. It necessarily contains a pixel of its own level.
  for (Node& node : nodes) {
    const std::size_t rep = sets[node.step].min_pixel[node.component];
    const std::size_t my_size = sets[node.step].size[node.component];
    node.parent_key = key_of.at({node.step, node.component});
    for (std::size_t s = node.step + 1; s < levels.size(); ++s) {
      const int c = sets[s].label[rep];
      if (sets[s].size[c] > my_size) {
        node.parent_key = key_of.at({s, c});
        break;
      }
    }
  }

  // Renumber root-first: by threshold step descending, then smallest pixel.
  std::vector<std::size_t> order(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Node& na = nodes[a];
    const Node& nb = nodes[b];
    return std::make_tuple(levels.size() - na.step, sets[na.step].min_pixel[na.component]) <
           std::make_tuple(levels.size() - nb.step, sets[nb.step].min_pixel[nb.component]);
  });
  std::vector<NodeId> new_id(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) new_id[order[i]] = static_cast<NodeId>(i);

  std::vector<NodeId> parent(nodes.size());
  std::vector<Level> level(nodes.size());
  std::vector<std::uint32_t> area(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const NodeId id = new_id[k];
    parent[id] = new_id[nodes[k].parent_key];
    level[id] = levels[nodes[k].step];
    area[id] = static_cast<std::uint32_t>(sets[nodes[k].step].size[nodes[k].component]);
  }

  std::vector<std::size_t> step_of_level(std::size_t{1} << image.bit_depth(), 0);
  for (std::size_t s = 0; s < levels.size(); ++s) step_of_level[levels[s]] = s;
  std::vector<NodeId> pixel_node(image.size());
  for (std::size_t v = 0; v < image.size(); ++v) {
    const std::size_t s = step_of_level[image[v]];
    pixel_node[v] = new_id[key_of.at({s, sets[s].label[v]})];
  }

  return ComponentTree(kind, image.dims(), image.bit_depth(), conn, std::move(parent), std::move(level),
                       std::move(area), std::move(pixel_node));
}

}  // namespace morpho

#include "morphofilter/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "morphofilter/error.hpp"
#include "morphofilter/kernels.hpp"

namespace morpho {

LabelMap::LabelMap(Dims dims, std::vector<Level> labels) : dims_(dims), labels_(std::move(labels)) {
  if (labels_.size() != dims_.count()) {
    throw DomainError("label count " + std::to_string(labels_.size()) + " does not match dims " + to_string(dims_));
  }
}

LabelMap LabelMap::from_image(const GrayImage& image) {
  return LabelMap(image.dims(), std::vector<Level>(image.values().begin(), image.values().end()));
}

namespace {

void require_same_dims(const LabelMap& a, const LabelMap& b) {
  if (a.dims() != b.dims()) {
    throw DomainError("label maps differ in dims: " + to_string(a.dims()) + " vs " + to_string(b.dims()));
  }
}

}  // namespace

double error_diversity(const LabelMap& pred1, const LabelMap& pred2, const LabelMap& truth) {
  require_same_dims(pred1, truth);
  require_same_dims(pred2, truth);
  const auto c = kernels::count_errors(pred1.labels(), pred2.labels(), truth.labels());
  if (c.first + c.second == 0) return 0.0;
  return 2.0 * static_cast<double>(c.both) / static_cast<double>(c.first + c.second);
}

double dice(const LabelMap& pred, const LabelMap& truth, Level class_id) {
  require_same_dims(pred, truth);
  const auto c = kernels::count_overlap(pred.labels(), truth.labels(), class_id);
  if (c.pred + c.truth == 0) return 1.0;
  return 2.0 * static_cast<double>(c.both) / static_cast<double>(c.pred + c.truth);
}

TreeStats tree_stats(const ComponentTree& tree) {
  TreeStats s;
  s.node_count = tree.node_count();
  for (std::uint32_t c : child_counts(tree)) {
    ++s.child_count_histogram[c];
    if (c == 0) ++s.leaf_count;
  }

  std::vector<std::size_t> depth(tree.node_count(), 0);
  for (NodeId id = 1; id < tree.node_count(); ++id) {
    depth[id] = depth[tree.parent(id)] + 1;
    s.max_depth = std::max(s.max_depth, depth[id]);
  }

  std::vector<std::uint32_t> areas(tree.areas().begin(), tree.areas().end());
  std::sort(areas.begin(), areas.end());
  s.area_min = areas.front();
  s.area_max = areas.back();
  s.area_median = areas[areas.size() / 2];
  s.area_mean = std::accumulate(areas.begin(), areas.end(), 0.0) / static_cast<double>(areas.size());
  return s;
}

}  // namespace morpho

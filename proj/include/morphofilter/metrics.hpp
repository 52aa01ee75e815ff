#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "morphofilter/image.hpp"
#include "morphofilter/tree.hpp"

namespace morpho {

/// Discrete class ids over an image domain.
class LabelMap {
 public:
  /// Throws DomainError if the label count does not match dims.
  LabelMap(Dims dims, std::vector<Level> labels);
  static LabelMap from_image(const GrayImage& image);

  const Dims& dims() const noexcept { return dims_; }
  std::span<const Level> labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }

 private:
  Dims dims_;
  std::vector<Level> labels_;
};

/// Dice overlap of the two prediction error sets against `truth`:
/// 2|E1 & E2| / (|E1| + |E2|), with E_k = {v : pred_k(v) != truth(v)}.
/// Returns 0 when neither prediction makes an error.
double error_diversity(const LabelMap& pred1, const LabelMap& pred2, const LabelMap& truth);

/// Dice of the `class_id` masks; 1 when both masks are empty.
double dice(const LabelMap& pred, const LabelMap& truth, Level class_id);

struct TreeStats {
  std::size_t node_count = 0;
  std::size_t leaf_count = 0;
  std::size_t max_depth = 0;
  /// children -> number of nodes with that many children
  std::map<std::uint32_t, std::size_t> child_count_histogram;
  std::uint32_t area_min = 0;
  std::uint32_t area_max = 0;
  double area_mean = 0.0;
  std::uint32_t area_median = 0;
};

TreeStats tree_stats(const ComponentTree& tree);

}  // namespace morpho

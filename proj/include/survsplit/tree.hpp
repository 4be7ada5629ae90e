#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "survsplit/dataset.hpp"
#include "survsplit/split.hpp"

namespace survsplit {

enum class SplitRule { exact, fast };

struct TreeParams {
  int mtry = 0;              // features sampled per node; must be in [1, p]
  int min_node_size = 15;
  int min_events_per_child = 1;
  int max_depth = -1;        // negative = unlimited
  SplitRule split_rule = SplitRule::fast;
  std::uint64_t rng_seed = 0;
};

struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::vector<int> samples;  // leaf only; training-sample indices

  bool is_leaf() const { return left < 0; }
};

struct SurvivalTree {
  std::vector<TreeNode> nodes;  // root at index 0

  /// Leaf index reached by a covariate vector.
  int route(std::span<const double> x) const;
  int route_sample(const SurvivalDataset& data, int row) const;
};

SurvivalTree grow_tree(const SurvivalDataset& data,
                       std::vector<int> sample_indices,
                       const TreeParams& params);

}  // namespace survsplit

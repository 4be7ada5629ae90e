#include "survsplit/tree.hpp"

#include <algorithm>
#include <stdexcept>

#include "survsplit/rng.hpp"
#include "survsplit/time_grid.hpp"

namespace survsplit {

namespace {

struct Grower {
  const SurvivalDataset& data;
  const TreeParams& params;
  SurvivalTree tree;
  SplitConstraints constraints;

  Grower(const SurvivalDataset& d, const TreeParams& p) : data(d), params(p) {
    constraints.min_node_size = p.min_node_size;
    constraints.min_events_per_child = p.min_events_per_child;
  }

  // Draws mtry distinct feature indices from a per-node RNG stream keyed on
  // (tree seed, node id); growth order cannot change the draw.
  std::vector<int> draw_features(int node_id) {
    const int p = static_cast<int>(data.num_features());
    std::vector<int> pool(p);
    for (int j = 0; j < p; ++j) pool[j] = j;
    auto rng = make_rng(params.rng_seed, static_cast<std::uint64_t>(node_id));
    std::vector<int> out;
    out.reserve(params.mtry);
    for (int k = 0; k < params.mtry; ++k) {
      std::uniform_int_distribution<int> pick(k, p - 1);
      std::swap(pool[k], pool[pick(rng)]);
      out.push_back(pool[k]);
    }
    return out;
  }

  std::optional<SplitResult> find_split(const NodeView& node,
                                        const NodeTimeGrid& grid, int node_id) {
    std::vector<FeatureEntry> sorted(node.size());
    std::optional<SplitResult> best;
    for (int feature : draw_features(node_id)) {
      const auto& col = data.column(feature);
      for (std::size_t i = 0; i < node.size(); ++i)
        sorted[i] = {col[node.indices[i]], static_cast<int>(i)};
      std::sort(sorted.begin(), sorted.end(),
                [](const FeatureEntry& a, const FeatureEntry& b) {
                  return a.value != b.value ? a.value < b.value
                                            : a.local_index < b.local_index;
                });
      auto result = params.split_rule == SplitRule::exact
                        ? scan_exact(sorted, node, grid, constraints, feature)
                        : scan_fast(sorted, node, grid, constraints, feature);
      if (result && (!best || result->criterion_sq > best->criterion_sq))
        best = result;
    }
    return best;
  }

  int grow(std::vector<int> indices, int depth) {
    const int node_id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();

    std::size_t events = 0;
    for (int i : indices) events += data.event(i);
    const bool depth_capped = params.max_depth >= 0 && depth >= params.max_depth;
    if (events == 0 ||
        indices.size() < 2 * static_cast<std::size_t>(params.min_node_size) ||
        depth_capped) {
      tree.nodes[node_id].samples = std::move(indices);
      return node_id;
    }

    NodeView node(data, indices);
    NodeTimeGrid grid = build_time_grid(node);
    auto split = find_split(node, grid, node_id);
    if (!split) {
      tree.nodes[node_id].samples = std::move(indices);
      return node_id;
    }

    std::vector<int> left_idx, right_idx;
    left_idx.reserve(split->n_left);
    right_idx.reserve(indices.size() - split->n_left);
    const auto& col = data.column(split->feature);
    for (int i : indices)
      (col[i] <= split->threshold ? left_idx : right_idx).push_back(i);

    tree.nodes[node_id].feature = split->feature;
    tree.nodes[node_id].threshold = split->threshold;
    const int left = grow(std::move(left_idx), depth + 1);
    const int right = grow(std::move(right_idx), depth + 1);
    tree.nodes[node_id].left = left;
    tree.nodes[node_id].right = right;
    return node_id;
  }
};

}  // namespace

int SurvivalTree::route(std::span<const double> x) const {
  int id = 0;
  while (!nodes[id].is_leaf()) {
    const TreeNode& node = nodes[id];
    id = x[node.feature] <= node.threshold ? node.left : node.right;
  }
  return id;
}

int SurvivalTree::route_sample(const SurvivalDataset& data, int row) const {
  int id = 0;
  while (!nodes[id].is_leaf()) {
    const TreeNode& node = nodes[id];
    id = data.covariate(row, node.feature) <= node.threshold ? node.left
                                                             : node.right;
  }
  return id;
}

SurvivalTree grow_tree(const SurvivalDataset& data,
                       std::vector<int> sample_indices,
                       const TreeParams& params) {
  if (sample_indices.empty())
    throw std::invalid_argument("grow_tree: empty sample index list");
  if (params.mtry < 1 ||
      params.mtry > static_cast<int>(data.num_features()))
    throw std::invalid_argument("grow_tree: mtry must be in [1, p]");
  if (params.min_node_size < 1)
    throw std::invalid_argument("grow_tree: min_node_size must be >= 1");
  Grower grower(data, params);
  grower.grow(std::move(sample_indices), 0);
  return std::move(grower.tree);
}

}  // namespace survsplit

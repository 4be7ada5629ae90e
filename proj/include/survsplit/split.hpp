#pragma once

#include <optional>
#include <span>
#include <vector>

#include "survsplit/dataset.hpp"
#include "survsplit/time_grid.hpp"

namespace survsplit {

struct SplitConstraints {
  int min_node_size = 15;
  int min_events_per_child = 1;
};

struct SplitResult {
  int feature = -1;
  double threshold = 0.0;   // X <= threshold goes left
  double criterion_sq = 0.0;
  int n_left = 0;
};

/// One feature value paired with its node-local sample index, sorted
/// ascending by (value, index) before scanning.
struct FeatureEntry {
  double value;
  int local_index;
};

/// Per-candidate record, filled when a trace sink is passed to a scanner.
/// Candidates sit between consecutive distinct feature values; `valid` is
/// false when the candidate was skipped (constraints or degenerate
/// denominator), in which case criterion_sq is 0.
struct CandidateEval {
  double threshold;
  int n_left;
  double criterion_sq;
  bool valid;
};

/// Exact log-rank scan: O(M) work per candidate, O(nM) total.
std::optional<SplitResult> scan_exact(std::span<const FeatureEntry> sorted_values,
                                      const NodeView& node,
                                      const NodeTimeGrid& grid,
                                      const SplitConstraints& constraints,
                                      int feature,
                                      std::vector<CandidateEval>* trace = nullptr);

/// Approximate log-rank scan with constant-time updates: O(n) total after
/// the grid's one-time setup. Identical candidate set and tie policy as
/// scan_exact.
std::optional<SplitResult> scan_fast(std::span<const FeatureEntry> sorted_values,
                                     const NodeView& node,
                                     const NodeTimeGrid& grid,
                                     const SplitConstraints& constraints,
                                     int feature,
                                     std::vector<CandidateEval>* trace = nullptr);

/// One-pass numerator: sum over left samples of (D_i - gamma_i). Equals the
/// exact numerator sum_t (d_{t,L} - Y_{t,L} alpha_t) as an identity.
double fast_numerator(const NodeView& node, const NodeTimeGrid& grid,
                      const std::vector<bool>& left_mask);

}  // namespace survsplit

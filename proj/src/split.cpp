#include "survsplit/split.hpp"

#include <cmath>

namespace survsplit {

namespace {

constexpr double kExpectedFailuresEps = 1e-12;

bool constraints_ok(const SplitConstraints& c, int n_left, int n_right,
                    int events_left, int events_right) {
  return n_left >= c.min_node_size && n_right >= c.min_node_size &&
         events_left >= c.min_events_per_child &&
         events_right >= c.min_events_per_child;
}

struct Best {
  double criterion_sq = -1.0;
  double threshold = 0.0;
  int n_left = 0;

  // Strict improvement only: at equal criterion the first (smallest
  // threshold) candidate wins, matching across both scanners.
  void offer(double crit, double thr, int nl) {
    if (crit > criterion_sq) {
      criterion_sq = crit;
      threshold = thr;
      n_left = nl;
    }
  }
};

std::optional<SplitResult> finish(const Best& best, int feature) {
  if (best.criterion_sq < 0.0) return std::nullopt;
  SplitResult r;
  r.feature = feature;
  r.threshold = best.threshold;
  r.criterion_sq = best.criterion_sq;
  r.n_left = best.n_left;
  return r;
}

}  // namespace

std::optional<SplitResult> scan_exact(std::span<const FeatureEntry> sorted_values,
                                      const NodeView& node,
                                      const NodeTimeGrid& grid,
                                      const SplitConstraints& constraints,
                                      int feature,
                                      std::vector<CandidateEval>* trace) {
  const int n = static_cast<int>(sorted_values.size());
  const int m = static_cast<int>(grid.grid_size());
  const int total_events = grid.num_events;

  // left_at_slot[t] counts left samples whose grid index is exactly t;
  // Y_{t,L} is its suffix sum, accumulated inside the per-candidate loop.
  std::vector<int> left_at_slot(m, 0);
  std::vector<int> d_left(m, 0);
  int events_left = 0;
  Best best;

  for (int i = 0; i < n; ++i) {
    const int local = sorted_values[i].local_index;
    const int slot = grid.sample_grid_index[local];
    if (slot != kNoGridIndex) ++left_at_slot[slot];
    if (node.event(local)) {
      ++d_left[slot];  // an event time is always on the grid
      ++events_left;
    }
    if (i + 1 >= n || sorted_values[i + 1].value <= sorted_values[i].value)
      continue;

    const int n_left = i + 1;
    const double threshold =
        0.5 * (sorted_values[i].value + sorted_values[i + 1].value);
    bool valid = constraints_ok(constraints, n_left, n - n_left, events_left,
                                total_events - events_left);
    double crit = 0.0;
    if (valid) {
      double num = 0.0, den = 0.0;
      int y_left = 0;
      for (int t = m - 1; t >= 0; --t) {
        y_left += left_at_slot[t];
        num += d_left[t] - y_left * grid.alpha[t];
        den += static_cast<double>(y_left) * (grid.at_risk[t] - y_left) *
               grid.beta[t];
      }
      if (den > 0.0) {
        crit = num * num / den;
        best.offer(crit, threshold, n_left);
      } else {
        valid = false;  // 0/0 is not evidence of a split
      }
    }
    if (trace) trace->push_back({threshold, n_left, valid ? crit : 0.0, valid});
  }
  return finish(best, feature);
}

std::optional<SplitResult> scan_fast(std::span<const FeatureEntry> sorted_values,
                                     const NodeView& node,
                                     const NodeTimeGrid& grid,
                                     const SplitConstraints& constraints,
                                     int feature,
                                     std::vector<CandidateEval>* trace) {
  const int n = static_cast<int>(sorted_values.size());
  const int total_events = grid.num_events;
  const double gamma_bar = grid.gamma_bar;

  double num = 0.0;
  double expected_left = 0.0;  // E1; E2 = gamma_bar - E1
  int events_left = 0;
  Best best;

  for (int i = 0; i < n; ++i) {
    const int local = sorted_values[i].local_index;
    const bool ev = node.event(local);
    num += (ev ? 1.0 : 0.0) - grid.gamma[local];
    expected_left += grid.gamma[local];
    events_left += ev;
    if (i + 1 >= n || sorted_values[i + 1].value <= sorted_values[i].value)
      continue;

    const int n_left = i + 1;
    const double threshold =
        0.5 * (sorted_values[i].value + sorted_values[i + 1].value);
    const double expected_right = gamma_bar - expected_left;
    bool valid = constraints_ok(constraints, n_left, n - n_left, events_left,
                                total_events - events_left) &&
                 expected_left > kExpectedFailuresEps &&
                 expected_right > kExpectedFailuresEps;
    double crit = 0.0;
    if (valid) {
      crit = num * num * (1.0 / expected_left + 1.0 / expected_right);
      best.offer(crit, threshold, n_left);
    }
    if (trace) trace->push_back({threshold, n_left, crit, valid});
  }
  return finish(best, feature);
}

double fast_numerator(const NodeView& node, const NodeTimeGrid& grid,
                      const std::vector<bool>& left_mask) {
  double num = 0.0;
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!left_mask[i]) continue;
    num += (node.event(i) ? 1.0 : 0.0) - grid.gamma[i];
  }
  return num;
}

}  // namespace survsplit

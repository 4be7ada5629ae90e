#pragma once

#include <stdexcept>
#include <vector>

#include "survsplit/dataset.hpp"

namespace survsplit {

/// Node with no observed events; such nodes cannot be split.
struct NoEventsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sentinel grid index for samples observed before the first failure time.
inline constexpr int kNoGridIndex = -1;

/// Node-local failure-time grid with all split-invariant quantities.
///
/// The grid runs over the M distinct failure times of the node only; censored
/// samples map onto the largest failure time not exceeding their observed
/// time. All per-sample vectors are indexed by node-local sample position.
struct NodeTimeGrid {
  std::vector<double> failure_times;  // strictly increasing, length M
  std::vector<int> d;                 // events at each failure time
  std::vector<int> at_risk;           // Y_t, non-increasing
  std::vector<double> alpha;          // d_t / Y_t
  std::vector<double> beta;           // ((Y_t-d_t)/(Y_t-1)) * d_t/Y_t^2, 0 at Y_t<=1
  std::vector<double> cum_alpha;      // A_t, running sum of alpha
  std::vector<int> sample_grid_index; // per node sample, kNoGridIndex sentinel
  std::vector<double> gamma;          // per node sample, A[sample_grid_index]
  double gamma_bar = 0.0;             // sum of gamma == node event count
  int num_events = 0;

  std::size_t grid_size() const { return failure_times.size(); }
};

/// Throws NoEventsError if the node has no sample with event = 1.
NodeTimeGrid build_time_grid(const NodeView& node);

}  // namespace survsplit

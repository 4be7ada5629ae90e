#include "survsplit/time_grid.hpp"

#include <algorithm>

namespace survsplit {

NodeTimeGrid build_time_grid(const NodeView& node) {
  const std::size_t n = node.size();
  NodeTimeGrid grid;

  std::vector<double> event_times;
  std::vector<double> all_times;
  event_times.reserve(n);
  all_times.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    all_times.push_back(node.time(i));
    if (node.event(i)) event_times.push_back(node.time(i));
  }
  if (event_times.empty())
    throw NoEventsError("node contains no observed events");

  std::sort(event_times.begin(), event_times.end());
  grid.failure_times = event_times;
  grid.failure_times.erase(
      std::unique(grid.failure_times.begin(), grid.failure_times.end()),
      grid.failure_times.end());
  const std::size_t m = grid.failure_times.size();

  grid.d.assign(m, 0);
  for (std::size_t k = 0, j = 0; k < event_times.size(); ++k) {
    while (grid.failure_times[j] != event_times[k]) ++j;
    ++grid.d[j];
  }

  // Y_t = #{i : T_i >= t}, from the sorted node times.
  std::sort(all_times.begin(), all_times.end());
  grid.at_risk.resize(m);
  for (std::size_t t = 0; t < m; ++t) {
    auto it = std::lower_bound(all_times.begin(), all_times.end(),
                               grid.failure_times[t]);
    grid.at_risk[t] = static_cast<int>(all_times.end() - it);
  }

  grid.alpha.resize(m);
  grid.beta.resize(m);
  grid.cum_alpha.resize(m);
  double running = 0.0;
  for (std::size_t t = 0; t < m; ++t) {
    const double dt = grid.d[t];
    const double yt = grid.at_risk[t];
    grid.alpha[t] = dt / yt;
    grid.beta[t] = yt > 1.0 ? ((yt - dt) / (yt - 1.0)) * dt / (yt * yt) : 0.0;
    running += grid.alpha[t];
    grid.cum_alpha[t] = running;
  }

  grid.sample_grid_index.resize(n);
  grid.gamma.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Largest failure time <= observed time; censored ties at a failure time
    // are at risk there and map to that slot.
    auto it = std::upper_bound(grid.failure_times.begin(),
                               grid.failure_times.end(), node.time(i));
    if (it == grid.failure_times.begin()) {
      grid.sample_grid_index[i] = kNoGridIndex;
      grid.gamma[i] = 0.0;
    } else {
      int idx = static_cast<int>(it - grid.failure_times.begin()) - 1;
      grid.sample_grid_index[i] = idx;
      grid.gamma[i] = grid.cum_alpha[idx];
    }
    grid.gamma_bar += grid.gamma[i];
    grid.num_events += node.event(i);
  }
  return grid;
}

}  // namespace survsplit

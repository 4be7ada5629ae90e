#include "survsplit/estimators.hpp"

#include <algorithm>
#include <stdexcept>

namespace survsplit {

namespace {

struct HazardSteps {
  std::vector<double> failure_times;
  std::vector<int> d;
  std::vector<int> at_risk;
};

HazardSteps tabulate(std::span<const double> times,
                     std::span<const std::uint8_t> events) {
  if (times.empty()) throw std::invalid_argument("empty sample set");
  if (times.size() != events.size())
    throw std::invalid_argument("times/events length mismatch");
  std::vector<double> all(times.begin(), times.end());
  std::sort(all.begin(), all.end());
  std::vector<double> ev;
  for (std::size_t i = 0; i < times.size(); ++i)
    if (events[i]) ev.push_back(times[i]);
  std::sort(ev.begin(), ev.end());

  HazardSteps h;
  h.failure_times = ev;
  h.failure_times.erase(
      std::unique(h.failure_times.begin(), h.failure_times.end()),
      h.failure_times.end());
  h.d.assign(h.failure_times.size(), 0);
  for (std::size_t k = 0, j = 0; k < ev.size(); ++k) {
    while (h.failure_times[j] != ev[k]) ++j;
    ++h.d[j];
  }
  h.at_risk.resize(h.failure_times.size());
  for (std::size_t t = 0; t < h.failure_times.size(); ++t) {
    auto it = std::lower_bound(all.begin(), all.end(), h.failure_times[t]);
    h.at_risk[t] = static_cast<int>(all.end() - it);
  }
  return h;
}

void check_grid(std::span<const double> eval_grid) {
  for (std::size_t i = 1; i < eval_grid.size(); ++i)
    if (!(eval_grid[i] > eval_grid[i - 1]))
      throw std::invalid_argument("eval_grid must be strictly increasing");
}

}  // namespace

double StepCurve::value_at(double t, double before_first) const {
  auto it = std::upper_bound(grid.begin(), grid.end(), t);
  if (it == grid.begin()) return before_first;
  return values[static_cast<std::size_t>(it - grid.begin()) - 1];
}

StepCurve kaplan_meier(std::span<const double> times,
                       std::span<const std::uint8_t> events,
                       std::span<const double> eval_grid) {
  check_grid(eval_grid);
  HazardSteps h = tabulate(times, events);
  StepCurve out;
  out.grid.assign(eval_grid.begin(), eval_grid.end());
  out.values.resize(eval_grid.size());
  double surv = 1.0;
  std::size_t t = 0;
  for (std::size_t g = 0; g < eval_grid.size(); ++g) {
    while (t < h.failure_times.size() && h.failure_times[t] <= eval_grid[g]) {
      surv *= 1.0 - static_cast<double>(h.d[t]) / h.at_risk[t];
      ++t;
    }
    out.values[g] = surv;
  }
  return out;
}

StepCurve nelson_aalen(std::span<const double> times,
                       std::span<const std::uint8_t> events,
                       std::span<const double> eval_grid) {
  check_grid(eval_grid);
  HazardSteps h = tabulate(times, events);
  StepCurve out;
  out.grid.assign(eval_grid.begin(), eval_grid.end());
  out.values.resize(eval_grid.size());
  double haz = 0.0;
  std::size_t t = 0;
  for (std::size_t g = 0; g < eval_grid.size(); ++g) {
    while (t < h.failure_times.size() && h.failure_times[t] <= eval_grid[g]) {
      haz += static_cast<double>(h.d[t]) / h.at_risk[t];
      ++t;
    }
    out.values[g] = haz;
  }
  return out;
}

}  // namespace survsplit

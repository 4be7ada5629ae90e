#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace survsplit {

/// Right-continuous step function over a strictly increasing time grid.
struct StepCurve {
  std::vector<double> grid;
  std::vector<double> values;

  /// Value at time t: the step at the largest grid time <= t, carried flat
  /// past the last grid point; `before_first` left of the first grid point
  /// (1 for survival, 0 for cumulative hazard).
  double value_at(double t, double before_first) const;
};

/// Product-limit survival estimate S(t) evaluated on eval_grid.
StepCurve kaplan_meier(std::span<const double> times,
                       std::span<const std::uint8_t> events,
                       std::span<const double> eval_grid);

/// Cumulative hazard estimate H(t) = sum of d_u/Y_u over u <= t.
StepCurve nelson_aalen(std::span<const double> times,
                       std::span<const std::uint8_t> events,
                       std::span<const double> eval_grid);

}  // namespace survsplit

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace survsplit {

struct MetricUndefinedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Per-repetition paired error differences with summary statistics.
struct PairedErrorSummary {
  std::vector<double> deltas;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
};

/// PE_C = 1 - Harrell's C. Pair (i, j) is comparable iff T_i < T_j and
/// D_i = 1; concordant iff risk_i > risk_j; risk ties count 0.5.
double concordance_error(std::span<const double> risk_scores,
                         std::span<const double> times,
                         std::span<const std::uint8_t> events);

/// Root-mean-square difference between true and predicted survival
/// probabilities at a fixed horizon.
double rmse_at_horizon(std::span<const double> true_surv,
                       std::span<const double> pred_surv);

/// Elementwise a - b with median and quartiles (linear interpolation).
PairedErrorSummary paired_delta(std::span<const double> run_a,
                                std::span<const double> run_b);

/// Interpolated quantile of an unsorted sample (type-7).
double quantile(std::vector<double> values, double q);

}  // namespace survsplit

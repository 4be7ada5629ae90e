#include "survsplit/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace survsplit {

double concordance_error(std::span<const double> risk_scores,
                         std::span<const double> times,
                         std::span<const std::uint8_t> events) {
  const std::size_t n = times.size();
  if (risk_scores.size() != n || events.size() != n)
    throw std::invalid_argument("concordance_error: length mismatch");
  double concordant = 0.0;
  std::size_t comparable = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!events[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !(times[i] < times[j])) continue;
      ++comparable;
      if (risk_scores[i] > risk_scores[j])
        concordant += 1.0;
      else if (risk_scores[i] == risk_scores[j])
        concordant += 0.5;
    }
  }
  if (comparable == 0)
    throw MetricUndefinedError("no comparable pairs for the C-index");
  return 1.0 - concordant / static_cast<double>(comparable);
}

double rmse_at_horizon(std::span<const double> true_surv,
                       std::span<const double> pred_surv) {
  if (true_surv.size() != pred_surv.size())
    throw std::invalid_argument("rmse_at_horizon: length mismatch");
  if (true_surv.empty())
    throw std::invalid_argument("rmse_at_horizon: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < true_surv.size(); ++i) {
    const double d = true_surv[i] - pred_surv[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(true_surv.size()));
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile: empty input");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

PairedErrorSummary paired_delta(std::span<const double> run_a,
                                std::span<const double> run_b) {
  if (run_a.size() != run_b.size())
    throw std::invalid_argument("paired_delta: length mismatch");
  if (run_a.empty()) throw std::invalid_argument("paired_delta: empty input");
  PairedErrorSummary out;
  out.deltas.resize(run_a.size());
  for (std::size_t i = 0; i < run_a.size(); ++i)
    out.deltas[i] = run_a[i] - run_b[i];
  out.median = quantile(out.deltas, 0.5);
  out.q1 = quantile(out.deltas, 0.25);
  out.q3 = quantile(out.deltas, 0.75);
  return out;
}

}  // namespace survsplit

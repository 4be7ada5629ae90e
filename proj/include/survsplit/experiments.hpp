#pragma once

#include <string>
#include <vector>

#include "survsplit/forest.hpp"
#include "survsplit/metrics.hpp"
#include "survsplit/simgen.hpp"

namespace survsplit {

struct ParityRecord {
  int rep = 0;
  std::uint64_t seed = 0;
  double err_exact = 0.0;
  double err_approx = 0.0;
  double delta = 0.0;  // exact - approx
};

struct ParityResult {
  std::vector<ParityRecord> records;
  PairedErrorSummary summary;
};

/// Paired OOB concordance-error comparison on a fixed dataset: per
/// repetition, both arms train with the same seed, differing only in split
/// rule. Arms are parameters so the aliased (same-rule) harness check stays
/// expressible.
ParityResult run_concordance_parity_rules(const SurvivalDataset& data,
                                          int reps, ForestParams params,
                                          SplitRule rule_a, SplitRule rule_b);

inline ParityResult run_concordance_parity(const SurvivalDataset& data,
                                           int reps, ForestParams params) {
  return run_concordance_parity_rules(data, reps, params, SplitRule::exact,
                                      SplitRule::fast);
}

/// Paired OOB horizon-RMSE comparison on fresh PH draws: repetition r uses
/// dataset seed cfg.seed + r for both arms.
ParityResult run_rmse_parity_rules(const PHConfig& cfg, int reps,
                                   ForestParams params, SplitRule rule_a,
                                   SplitRule rule_b);

inline ParityResult run_rmse_parity(const PHConfig& cfg, int reps,
                                    ForestParams params) {
  return run_rmse_parity_rules(cfg, reps, params, SplitRule::exact,
                               SplitRule::fast);
}

/// RMSE of the constant predictor S-hat == mean(true S) for the same draw.
double constant_predictor_rmse(const std::vector<double>& true_surv);

void write_parity_csv(const ParityResult& result, const std::string& path);
std::string parity_summary_markdown(const ParityResult& result);

}  // namespace survsplit

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "survsplit/dataset.hpp"
#include "survsplit/estimators.hpp"
#include "survsplit/tree.hpp"

namespace survsplit {

struct TrainingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelIoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ForestParams {
  int num_trees = 100;
  double sample_fraction = 0.5;  // subsample per tree, without replacement
  TreeParams tree;
  int num_threads = 0;  // 0 = auto (hardware concurrency)
};

enum class CurveKind { survival, cumulative_hazard };

struct TreeRecord {
  SurvivalTree tree;
  std::vector<int> inbag;  // sorted ascending
};

/// Trained ensemble. Training outcomes (times/events) are retained so leaf
/// curves can be rebuilt from a loaded model without the training file.
struct ForestModel {
  std::vector<TreeRecord> trees;
  std::vector<double> global_grid;  // distinct failure times of training data
  ForestParams params;
  std::uint64_t fingerprint = 0;
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<double> times;
  std::vector<std::uint8_t> events;
};

ForestModel train(const SurvivalDataset& data, ForestParams params);

/// Ensemble prediction for one covariate vector: unweighted pointwise mean of
/// per-tree leaf curves on the global grid (Kaplan-Meier survival or
/// Nelson-Aalen cumulative hazard).
StepCurve predict_curve(const ForestModel& model, std::span<const double> x,
                        CurveKind kind = CurveKind::survival);

/// Out-of-bag curves for every training sample; nullopt for samples that are
/// in-bag in every tree.
std::vector<std::optional<StepCurve>> predict_oob(
    const ForestModel& model, const SurvivalDataset& data,
    CurveKind kind = CurveKind::survival);

/// OOB risk score per sample: mean over OOB trees of the leaf cumulative
/// hazard summed over the global grid. NaN where no OOB tree exists.
/// Equals summing the predict_oob cumulative-hazard curve over the grid.
std::vector<double> oob_hazard_risk(const ForestModel& model,
                                    const SurvivalDataset& data);

/// OOB survival probability at a fixed horizon; NaN where absent.
std::vector<double> oob_survival_at(const ForestModel& model,
                                    const SurvivalDataset& data,
                                    double horizon);

void save_model(const ForestModel& model, const std::string& path);
ForestModel load_model(const std::string& path);

std::string model_to_json(const ForestModel& model);
ForestModel model_from_json(const std::string& text);

}  // namespace survsplit

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace survsplit {

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Immutable right-censored survival dataset.
///
/// Covariates are stored column-major: split scanning walks one feature at a
/// time over sorted values, so column contiguity is the layout that matters.
class SurvivalDataset {
 public:
  SurvivalDataset(std::vector<std::vector<double>> covariate_columns,
                  std::vector<std::string> covariate_names,
                  std::vector<double> times, std::vector<std::uint8_t> events,
                  std::string time_name = "time",
                  std::string event_name = "event");

  std::size_t num_samples() const { return times_.size(); }
  std::size_t num_features() const { return columns_.size(); }
  std::size_t num_events() const { return num_events_; }

  double covariate(std::size_t row, std::size_t col) const {
    return columns_[col][row];
  }
  const std::vector<double>& column(std::size_t col) const {
    return columns_[col];
  }
  double time(std::size_t i) const { return times_[i]; }
  bool event(std::size_t i) const { return events_[i] != 0; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<std::uint8_t>& events() const { return events_; }

  const std::vector<std::string>& covariate_names() const { return names_; }
  const std::string& time_name() const { return time_name_; }
  const std::string& event_name() const { return event_name_; }

  /// Copies one row's covariates into a dense vector.
  std::vector<double> row(std::size_t i) const;

  /// FNV-1a over shape and raw content; identifies the dataset a model was
  /// trained on.
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  std::vector<std::vector<double>> columns_;
  std::vector<std::string> names_;
  std::vector<double> times_;
  std::vector<std::uint8_t> events_;
  std::string time_name_;
  std::string event_name_;
  std::size_t num_events_ = 0;
  std::uint64_t fingerprint_ = 0;
};

/// Reference to a subset of dataset rows, as held by one tree node.
struct NodeView {
  const SurvivalDataset* data = nullptr;
  std::vector<int> indices;

  NodeView() = default;
  NodeView(const SurvivalDataset& d, std::vector<int> idx);

  /// View spanning the whole dataset in row order.
  static NodeView all(const SurvivalDataset& d);

  std::size_t size() const { return indices.size(); }
  double time(std::size_t local) const { return data->time(indices[local]); }
  bool event(std::size_t local) const { return data->event(indices[local]); }
  std::size_t count_events() const;

  /// New dataset holding exactly the viewed rows, in view order.
  SurvivalDataset materialize() const;
};

SurvivalDataset load_csv(const std::string& path, const std::string& time_col,
                         const std::string& event_col);

void write_csv(const SurvivalDataset& data, const std::string& path);

/// Loads a headered all-numeric CSV without survival semantics (used for
/// prediction inputs). Returns column names and column-major values.
struct NumericTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  std::size_t num_rows() const {
    return columns.empty() ? 0 : columns[0].size();
  }
};
NumericTable load_csv_table(const std::string& path);

}  // namespace survsplit

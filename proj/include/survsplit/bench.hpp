#pragma once

#include <span>
#include <string>
#include <vector>

#include "survsplit/tree.hpp"

namespace survsplit {

struct BenchCell {
  std::size_t n;
  std::size_t p;
  int target_M;
};

struct BenchRow {
  std::size_t n = 0;
  std::size_t p = 0;
  int target_M = 0;
  int realized_M = 0;
  double exact_mean_s = 0.0;
  double approx_mean_s = 0.0;
  double exact_median_s = 0.0;
  double approx_median_s = 0.0;
  double speedup = 0.0;  // exact_mean / approx_mean
  int reps = 0;
};

enum class TableFormat { markdown, csv };

/// Times single-tree growth under both split rules on Poisson benchmark data.
/// Per cell: one untimed warm-up pair, then `reps` interleaved
/// exact/approx repetitions with identical tree seeds. Single-threaded by
/// contract.
std::vector<BenchRow> bench_single_tree(std::span<const BenchCell> cells,
                                        int reps, TreeParams base,
                                        std::uint64_t seed = 0,
                                        double censor_rate = 0.10);

std::string emit_table(std::span<const BenchRow> rows, TableFormat format);

}  // namespace survsplit

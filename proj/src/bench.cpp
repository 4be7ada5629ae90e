#include "survsplit/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "survsplit/rng.hpp"
#include "survsplit/simgen.hpp"
#include "survsplit/time_grid.hpp"

namespace survsplit {

namespace {

double grow_timed(const SurvivalDataset& data, const TreeParams& params) {
  std::vector<int> indices(data.num_samples());
  for (std::size_t i = 0; i < indices.size(); ++i)
    indices[i] = static_cast<int>(i);
  const auto start = std::chrono::steady_clock::now();
  SurvivalTree tree = grow_tree(data, std::move(indices), params);
  const auto stop = std::chrono::steady_clock::now();
  if (tree.nodes.empty()) throw std::logic_error("empty tree");
  return std::chrono::duration<double>(stop - start).count();
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<BenchRow> bench_single_tree(std::span<const BenchCell> cells,
                                        int reps, TreeParams base,
                                        std::uint64_t seed,
                                        double censor_rate) {
  if (reps < 1) throw std::invalid_argument("reps must be >= 1");
  std::vector<BenchRow> rows;
  for (const BenchCell& cell : cells) {
    PoissonBenchConfig cfg;
    cfg.n = cell.n;
    cfg.p = cell.p;
    cfg.target_M = cell.target_M;
    cfg.censor_rate = censor_rate;
    cfg.seed = derive_seed(seed, (cell.n << 20) ^ (cell.p << 10) ^
                                     static_cast<std::uint64_t>(cell.target_M));
    SurvivalDataset data = gen_poisson_bench(cfg);

    std::set<double> distinct;
    for (std::size_t i = 0; i < data.num_samples(); ++i)
      if (data.event(i)) distinct.insert(data.time(i));

    TreeParams exact_params = base;
    exact_params.split_rule = SplitRule::exact;
    TreeParams fast_params = base;
    fast_params.split_rule = SplitRule::fast;
    if (base.mtry == 0 || base.mtry > static_cast<int>(cell.p)) {
      exact_params.mtry = static_cast<int>(cell.p);
      fast_params.mtry = static_cast<int>(cell.p);
    }

    // Warm-up pair, untimed.
    exact_params.rng_seed = derive_seed(cfg.seed, 0);
    fast_params.rng_seed = exact_params.rng_seed;
    grow_timed(data, exact_params);
    grow_timed(data, fast_params);

    std::vector<double> exact_times, approx_times;
    for (int r = 0; r < reps; ++r) {
      const std::uint64_t tree_seed = derive_seed(cfg.seed, r + 1);
      exact_params.rng_seed = tree_seed;
      fast_params.rng_seed = tree_seed;
      exact_times.push_back(grow_timed(data, exact_params));
      approx_times.push_back(grow_timed(data, fast_params));
    }

    BenchRow row;
    row.n = cell.n;
    row.p = cell.p;
    row.target_M = cell.target_M;
    row.realized_M = static_cast<int>(distinct.size());
    for (double t : exact_times) row.exact_mean_s += t;
    for (double t : approx_times) row.approx_mean_s += t;
    row.exact_mean_s /= reps;
    row.approx_mean_s /= reps;
    row.exact_median_s = median_of(exact_times);
    row.approx_median_s = median_of(approx_times);
    row.speedup = row.exact_mean_s / row.approx_mean_s;
    row.reps = reps;
    rows.push_back(row);
  }
  return rows;
}

std::string emit_table(std::span<const BenchRow> rows, TableFormat format) {
  std::ostringstream out;
  char buf[64];
  if (format == TableFormat::csv) {
    out << "n,p,M,exact_s,approx_s,speedup,exact_median_s,approx_median_s,"
           "reps\n";
    for (const BenchRow& r : rows) {
      std::snprintf(buf, sizeof(buf), "%.6g,%.6g,%.6g,%.6g,%.6g",
                    r.exact_mean_s, r.approx_mean_s, r.speedup,
                    r.exact_median_s, r.approx_median_s);
      out << r.n << "," << r.p << "," << r.realized_M << "," << buf << ","
          << r.reps << "\n";
    }
  } else {
    out << "| n | p | M | Exact (s) | Approx (s) | Speedup |\n";
    out << "|---|---|---|-----------|------------|---------|\n";
    for (const BenchRow& r : rows) {
      std::snprintf(buf, sizeof(buf), "%.3f | %.3f | %.2f", r.exact_mean_s,
                    r.approx_mean_s, r.speedup);
      out << "| " << r.n << " | " << r.p << " | " << r.realized_M << " | "
          << buf << " |\n";
    }
  }
  return out.str();
}

}  // namespace survsplit

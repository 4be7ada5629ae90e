#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "survsplit/bench.hpp"
#include "survsplit/dataset.hpp"
#include "survsplit/experiments.hpp"
#include "survsplit/forest.hpp"
#include "survsplit/simgen.hpp"

namespace {

using namespace survsplit;

int env_threads_fallback() {
  const char* env = std::getenv("SURVSPLIT_THREADS");
  if (!env) return 0;
  return std::atoi(env);
}

SplitRule parse_rule(const std::string& s) {
  if (s == "exact") return SplitRule::exact;
  if (s == "fast") return SplitRule::fast;
  throw CLI::ValidationError("--split-rule", "must be 'exact' or 'fast'");
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed: " + path);
}

struct TrainArgs {
  std::string data, time_col = "time", event_col = "event", out;
  int trees = 100;
  int mtry = 0;
  int min_node_size = 15;
  std::string split_rule = "fast";
  double sample_fraction = 0.5;
  std::uint64_t seed = 42;
  int threads = env_threads_fallback();
};

int run_train(const TrainArgs& args) {
  SurvivalDataset data = load_csv(args.data, args.time_col, args.event_col);
  ForestParams params;
  params.num_trees = args.trees;
  params.sample_fraction = args.sample_fraction;
  params.num_threads = args.threads;
  params.tree.mtry = args.mtry;
  params.tree.min_node_size = args.min_node_size;
  params.tree.split_rule = parse_rule(args.split_rule);
  params.tree.rng_seed = args.seed;

  const auto start = std::chrono::steady_clock::now();
  ForestModel model = train(data, params);
  const auto stop = std::chrono::steady_clock::now();
  save_model(model, args.out);

  std::printf("trained %d trees on n=%zu, p=%zu in %.2f s -> %s\n",
              params.num_trees, data.num_samples(), data.num_features(),
              std::chrono::duration<double>(stop - start).count(),
              args.out.c_str());
  return 0;
}

struct PredictArgs {
  std::string model, data, out;
  std::string time_col = "time", event_col = "event";
  std::optional<double> horizon;
};

int run_predict(const PredictArgs& args) {
  ForestModel model = load_model(args.model);
  NumericTable table = load_csv_table(args.data);

  // Outcome columns are ignored if present; everything else is a covariate.
  std::vector<int> cov_cols;
  for (std::size_t j = 0; j < table.names.size(); ++j)
    if (table.names[j] != args.time_col && table.names[j] != args.event_col)
      cov_cols.push_back(static_cast<int>(j));
  if (cov_cols.size() != model.p)
    throw std::runtime_error("prediction data has " +
                             std::to_string(cov_cols.size()) +
                             " covariates, model expects " +
                             std::to_string(model.p));

  std::ostringstream out;
  char buf[40];
  if (args.horizon) {
    out << "s_at_h\n";
  } else {
    for (std::size_t g = 0; g < model.global_grid.size(); ++g) {
      std::snprintf(buf, sizeof(buf), "t_%.17g", model.global_grid[g]);
      out << buf << (g + 1 < model.global_grid.size() ? "," : "\n");
    }
  }
  std::vector<double> x(model.p);
  for (std::size_t i = 0; i < table.num_rows(); ++i) {
    for (std::size_t j = 0; j < cov_cols.size(); ++j)
      x[j] = table.columns[cov_cols[j]][i];
    StepCurve curve = predict_curve(model, x);
    if (args.horizon) {
      std::snprintf(buf, sizeof(buf), "%.17g", curve.value_at(*args.horizon, 1.0));
      out << buf << "\n";
    } else {
      for (std::size_t g = 0; g < curve.values.size(); ++g) {
        std::snprintf(buf, sizeof(buf), "%.17g", curve.values[g]);
        out << buf << (g + 1 < curve.values.size() ? "," : "\n");
      }
    }
  }
  atomic_write(args.out, out.str());
  std::printf("wrote predictions for %zu rows -> %s\n", table.num_rows(),
              args.out.c_str());
  return 0;
}

struct BenchArgs {
  std::vector<std::size_t> n_list{20000, 50000};
  std::vector<std::size_t> p_list{25, 50};
  std::vector<int> m_list{20, 130, 260, 500};
  int reps = 10;
  bool quick = false;
  std::string format = "markdown";
  std::string out;
  std::uint64_t seed = 42;
  int min_node_size = 15;
};

int run_bench(const BenchArgs& args) {
  std::vector<BenchCell> cells;
  if (args.quick) {
    cells.push_back({20000, 25, 20});
  } else {
    for (std::size_t n : args.n_list)
      for (std::size_t p : args.p_list)
        for (int m : args.m_list) cells.push_back({n, p, m});
  }
  TreeParams base;
  base.min_node_size = args.min_node_size;
  base.mtry = 0;  // resolved to all features per cell
  auto rows = bench_single_tree(cells, args.reps, base, args.seed);
  const std::string text = emit_table(
      rows, args.format == "csv" ? TableFormat::csv : TableFormat::markdown);
  if (args.out.empty())
    std::fputs(text.c_str(), stdout);
  else
    atomic_write(args.out, text);
  return 0;
}

struct ParityArgs {
  std::string mode = "concordance";
  std::size_t n = 2000;
  std::size_t p = 10;
  int reps = 50;
  int trees = 200;
  double sample_fraction = 0.5;
  std::uint64_t seed = 42;
  int threads = env_threads_fallback();
  std::string out;
  std::string format = "markdown";
};

int run_parity(const ParityArgs& args) {
  ForestParams params;
  params.num_trees = args.trees;
  params.sample_fraction = args.sample_fraction;
  params.num_threads = args.threads;
  params.tree.rng_seed = args.seed;

  ParityResult result;
  if (args.mode == "concordance") {
    PHConfig cfg;
    cfg.n = args.n;
    cfg.p = args.p;
    cfg.seed = args.seed;
    result = run_concordance_parity(gen_ph(cfg).data, args.reps, params);
  } else {
    PHConfig cfg;
    cfg.n = args.n;
    cfg.p = args.p;
    cfg.seed = args.seed;
    result = run_rmse_parity(cfg, args.reps, params);
  }
  if (!args.out.empty()) write_parity_csv(result, args.out);
  if (args.format == "csv") {
    std::printf("rep,seed,err_exact,err_approx,delta\n");
    for (const auto& r : result.records)
      std::printf("%d,%llu,%.17g,%.17g,%.17g\n", r.rep,
                  static_cast<unsigned long long>(r.seed), r.err_exact,
                  r.err_approx, r.delta);
  } else {
    std::fputs(parity_summary_markdown(result).c_str(), stdout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Survival forest trainer with exact and constant-time "
               "log-rank splitting"};
  app.require_subcommand(1);

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "Train a survival forest");
  train_cmd->add_option("--data", train_args.data, "Training CSV")->required();
  train_cmd->add_option("--time-col", train_args.time_col, "Time column name");
  train_cmd->add_option("--event-col", train_args.event_col, "Event column name");
  train_cmd->add_option("--out", train_args.out, "Model output path")->required();
  train_cmd->add_option("--trees", train_args.trees, "Number of trees");
  train_cmd->add_option("--mtry", train_args.mtry, "Features per split (0 = sqrt(p))");
  train_cmd->add_option("--min-node-size", train_args.min_node_size, "Minimum leaf size");
  train_cmd->add_option("--split-rule", train_args.split_rule, "exact or fast")
      ->check(CLI::IsMember({"exact", "fast"}));
  train_cmd->add_option("--sample-fraction", train_args.sample_fraction,
                        "Per-tree subsample fraction");
  train_cmd->add_option("--seed", train_args.seed, "RNG seed");
  train_cmd->add_option("--threads", train_args.threads, "Worker threads (0 = auto)");

  PredictArgs predict_args;
  auto* predict_cmd = app.add_subcommand("predict", "Predict survival curves");
  predict_cmd->add_option("--model", predict_args.model, "Model JSON")->required();
  predict_cmd->add_option("--data", predict_args.data, "Covariate CSV")->required();
  predict_cmd->add_option("--out", predict_args.out, "Prediction CSV")->required();
  predict_cmd->add_option("--time-col", predict_args.time_col,
                          "Outcome column to ignore if present");
  predict_cmd->add_option("--event-col", predict_args.event_col,
                          "Outcome column to ignore if present");
  double horizon_value = 0.0;
  auto* horizon_opt = predict_cmd->add_option(
      "--horizon", horizon_value, "Emit S(h; x) instead of full curves");

  BenchArgs bench_args;
  auto* bench_cmd =
      app.add_subcommand("bench", "Single-tree timing, exact vs approx");
  bench_cmd->add_option("--n", bench_args.n_list, "Sample sizes");
  bench_cmd->add_option("--p", bench_args.p_list, "Covariate counts");
  bench_cmd->add_option("--M", bench_args.m_list, "Target distinct event times");
  bench_cmd->add_option("--reps", bench_args.reps, "Repetitions per cell");
  bench_cmd->add_flag("--quick", bench_args.quick, "Smallest cell only");
  bench_cmd->add_option("--format", bench_args.format, "markdown or csv")
      ->check(CLI::IsMember({"markdown", "csv"}));
  bench_cmd->add_option("--out", bench_args.out, "Write table to file");
  bench_cmd->add_option("--seed", bench_args.seed, "RNG seed");
  bench_cmd->add_option("--min-node-size", bench_args.min_node_size,
                        "Minimum leaf size");

  ParityArgs parity_args;
  auto* parity_cmd =
      app.add_subcommand("parity", "Paired exact-vs-approx accuracy study");
  parity_cmd->add_option("--mode", parity_args.mode, "concordance or rmse")
      ->check(CLI::IsMember({"concordance", "rmse"}));
  parity_cmd->add_option("--n", parity_args.n, "Sample size");
  parity_cmd->add_option("--p", parity_args.p, "Covariate count");
  parity_cmd->add_option("--reps", parity_args.reps, "Paired repetitions");
  parity_cmd->add_option("--trees", parity_args.trees, "Trees per forest");
  parity_cmd->add_option("--sample-fraction", parity_args.sample_fraction,
                         "Per-tree subsample fraction");
  parity_cmd->add_option("--seed", parity_args.seed, "RNG seed");
  parity_cmd->add_option("--threads", parity_args.threads, "Worker threads");
  parity_cmd->add_option("--out", parity_args.out, "Per-rep delta CSV path");
  parity_cmd->add_option("--format", parity_args.format, "markdown or csv")
      ->check(CLI::IsMember({"markdown", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*train_cmd) return run_train(train_args);
    if (*predict_cmd) {
      if (horizon_opt->count() > 0) predict_args.horizon = horizon_value;
      return run_predict(predict_args);
    }
    if (*bench_cmd) return run_bench(bench_args);
    if (*parity_cmd) return run_parity(parity_args);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}

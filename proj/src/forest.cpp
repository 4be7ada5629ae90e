#include "survsplit/forest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "survsplit/rng.hpp"

namespace survsplit {

namespace {

using nlohmann::json;

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<int> draw_subsample(std::size_t n, std::size_t k,
                                std::mt19937_64& rng) {
  std::vector<int> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

// Distinct failure times of a leaf with their cumulative hazard and
// survival values, computed from the model's retained outcomes.
struct LeafSteps {
  std::vector<double> failure_times;
  std::vector<double> hazard;    // cumulative
  std::vector<double> survival;  // product-limit
};

LeafSteps leaf_steps(const ForestModel& model, const std::vector<int>& samples) {
  std::vector<double> all;
  std::vector<double> ev;
  all.reserve(samples.size());
  for (int i : samples) {
    all.push_back(model.times[i]);
    if (model.events[i]) ev.push_back(model.times[i]);
  }
  std::sort(all.begin(), all.end());
  std::sort(ev.begin(), ev.end());
  LeafSteps out;
  out.failure_times = ev;
  out.failure_times.erase(
      std::unique(out.failure_times.begin(), out.failure_times.end()),
      out.failure_times.end());
  out.hazard.resize(out.failure_times.size());
  out.survival.resize(out.failure_times.size());
  double haz = 0.0, surv = 1.0;
  std::size_t k = 0;
  for (std::size_t t = 0; t < out.failure_times.size(); ++t) {
    int d = 0;
    while (k < ev.size() && ev[k] == out.failure_times[t]) {
      ++d;
      ++k;
    }
    auto it = std::lower_bound(all.begin(), all.end(), out.failure_times[t]);
    const double y = static_cast<double>(all.end() - it);
    haz += d / y;
    surv *= 1.0 - d / y;
    out.hazard[t] = haz;
    out.survival[t] = surv;
  }
  return out;
}

// Evaluates the leaf step values on the global grid and adds them into acc.
void accumulate_on_grid(const LeafSteps& steps, CurveKind kind,
                        const std::vector<double>& grid,
                        std::vector<double>& acc) {
  const auto& vals =
      kind == CurveKind::survival ? steps.survival : steps.hazard;
  const double before = kind == CurveKind::survival ? 1.0 : 0.0;
  double cur = before;
  std::size_t t = 0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    while (t < steps.failure_times.size() && steps.failure_times[t] <= grid[g]) {
      cur = vals[t];
      ++t;
    }
    acc[g] += cur;
  }
}

// Sum over global grid points of the leaf cumulative hazard step function.
double hazard_sum_over_grid(const LeafSteps& steps,
                            const std::vector<double>& grid) {
  double total = 0.0;
  for (std::size_t t = 0; t < steps.failure_times.size(); ++t) {
    auto lo = std::lower_bound(grid.begin(), grid.end(), steps.failure_times[t]);
    const double increment =
        steps.hazard[t] - (t > 0 ? steps.hazard[t - 1] : 0.0);
    // Every grid point >= this failure time sees the increment.
    total += increment * static_cast<double>(grid.end() - lo);
  }
  return total;
}

double survival_at(const LeafSteps& steps, double horizon) {
  auto it = std::upper_bound(steps.failure_times.begin(),
                             steps.failure_times.end(), horizon);
  if (it == steps.failure_times.begin()) return 1.0;
  return steps.survival[static_cast<std::size_t>(
      it - steps.failure_times.begin()) - 1];
}

// Groups OOB samples of one tree by the leaf they route to.
std::vector<std::pair<int, std::vector<int>>> group_oob_by_leaf(
    const ForestModel& model, const SurvivalDataset& data,
    const TreeRecord& record) {
  std::vector<std::pair<int, int>> routed;  // (leaf, sample)
  std::size_t b = 0;
  for (std::size_t i = 0; i < model.n; ++i) {
    while (b < record.inbag.size() &&
           record.inbag[b] < static_cast<int>(i))
      ++b;
    if (b < record.inbag.size() && record.inbag[b] == static_cast<int>(i))
      continue;
    routed.emplace_back(record.tree.route_sample(data, static_cast<int>(i)),
                        static_cast<int>(i));
  }
  std::sort(routed.begin(), routed.end());
  std::vector<std::pair<int, std::vector<int>>> groups;
  for (const auto& [leaf, sample] : routed) {
    if (groups.empty() || groups.back().first != leaf)
      groups.push_back({leaf, {}});
    groups.back().second.push_back(sample);
  }
  return groups;
}

void check_fingerprint(const ForestModel& model, const SurvivalDataset& data) {
  if (data.fingerprint() != model.fingerprint)
    throw std::invalid_argument(
        "dataset fingerprint does not match the trained model");
}

}  // namespace

ForestModel train(const SurvivalDataset& data, ForestParams params) {
  if (params.num_trees < 1)
    throw std::invalid_argument("num_trees must be >= 1");
  if (!(params.sample_fraction > 0.0 && params.sample_fraction <= 1.0))
    throw std::invalid_argument("sample_fraction must be in (0, 1]");
  if (data.num_events() == 0)
    throw TrainingError("training data contains no events");
  if (params.tree.mtry == 0) {
    params.tree.mtry = std::max(
        1, static_cast<int>(std::floor(std::sqrt(
               static_cast<double>(data.num_features())))));
  }

  const std::size_t n = data.num_samples();
  const std::size_t k = static_cast<std::size_t>(
      std::ceil(params.sample_fraction * static_cast<double>(n)));

  ForestModel model;
  model.params = params;
  model.fingerprint = data.fingerprint();
  model.n = n;
  model.p = data.num_features();
  model.times = data.times();
  model.events = data.events();

  std::vector<double> grid;
  for (std::size_t i = 0; i < n; ++i)
    if (data.event(i)) grid.push_back(data.time(i));
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  model.global_grid = std::move(grid);

  model.trees.resize(params.num_trees);
  const std::uint64_t base_seed = params.tree.rng_seed;
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= params.num_trees) return;
      auto rng = make_rng(base_seed, 2 * static_cast<std::uint64_t>(t));
      std::vector<int> inbag = draw_subsample(n, k, rng);
      TreeParams tree_params = params.tree;
      tree_params.rng_seed =
          derive_seed(base_seed, 2 * static_cast<std::uint64_t>(t) + 1);
      model.trees[t].tree = grow_tree(data, inbag, tree_params);
      model.trees[t].inbag = std::move(inbag);
    }
  };

  const int threads =
      std::min(resolve_threads(params.num_threads), params.num_trees);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return model;
}

StepCurve predict_curve(const ForestModel& model, std::span<const double> x,
                        CurveKind kind) {
  if (x.size() != model.p)
    throw std::invalid_argument("covariate vector has wrong dimension");
  std::vector<double> acc(model.global_grid.size(), 0.0);
  for (const auto& record : model.trees) {
    const int leaf = record.tree.route(x);
    accumulate_on_grid(leaf_steps(model, record.tree.nodes[leaf].samples),
                       kind, model.global_grid, acc);
  }
  for (double& v : acc) v /= static_cast<double>(model.trees.size());
  StepCurve out;
  out.grid = model.global_grid;
  out.values = std::move(acc);
  return out;
}

std::vector<std::optional<StepCurve>> predict_oob(const ForestModel& model,
                                                  const SurvivalDataset& data,
                                                  CurveKind kind) {
  check_fingerprint(model, data);
  std::vector<std::vector<double>> acc(
      model.n, std::vector<double>(model.global_grid.size(), 0.0));
  std::vector<int> counts(model.n, 0);
  std::vector<double> leaf_acc(model.global_grid.size());
  for (const auto& record : model.trees) {
    for (const auto& [leaf, samples] : group_oob_by_leaf(model, data, record)) {
      std::fill(leaf_acc.begin(), leaf_acc.end(), 0.0);
      accumulate_on_grid(leaf_steps(model, record.tree.nodes[leaf].samples),
                         kind, model.global_grid, leaf_acc);
      for (int s : samples) {
        for (std::size_t g = 0; g < leaf_acc.size(); ++g)
          acc[s][g] += leaf_acc[g];
        ++counts[s];
      }
    }
  }
  std::vector<std::optional<StepCurve>> out(model.n);
  for (std::size_t i = 0; i < model.n; ++i) {
    if (counts[i] == 0) continue;
    StepCurve curve;
    curve.grid = model.global_grid;
    curve.values = std::move(acc[i]);
    for (double& v : curve.values) v /= counts[i];
    out[i] = std::move(curve);
  }
  return out;
}

std::vector<double> oob_hazard_risk(const ForestModel& model,
                                    const SurvivalDataset& data) {
  check_fingerprint(model, data);
  std::vector<double> acc(model.n, 0.0);
  std::vector<int> counts(model.n, 0);
  for (const auto& record : model.trees) {
    for (const auto& [leaf, samples] : group_oob_by_leaf(model, data, record)) {
      const double s = hazard_sum_over_grid(
          leaf_steps(model, record.tree.nodes[leaf].samples),
          model.global_grid);
      for (int i : samples) {
        acc[i] += s;
        ++counts[i];
      }
    }
  }
  for (std::size_t i = 0; i < model.n; ++i)
    acc[i] = counts[i] > 0 ? acc[i] / counts[i]
                           : std::numeric_limits<double>::quiet_NaN();
  return acc;
}

std::vector<double> oob_survival_at(const ForestModel& model,
                                    const SurvivalDataset& data,
                                    double horizon) {
  check_fingerprint(model, data);
  std::vector<double> acc(model.n, 0.0);
  std::vector<int> counts(model.n, 0);
  for (const auto& record : model.trees) {
    for (const auto& [leaf, samples] : group_oob_by_leaf(model, data, record)) {
      const double s = survival_at(
          leaf_steps(model, record.tree.nodes[leaf].samples), horizon);
      for (int i : samples) {
        acc[i] += s;
        ++counts[i];
      }
    }
  }
  for (std::size_t i = 0; i < model.n; ++i)
    acc[i] = counts[i] > 0 ? acc[i] / counts[i]
                           : std::numeric_limits<double>::quiet_NaN();
  return acc;
}

namespace {

json params_to_json(const ForestParams& p) {
  // num_threads deliberately omitted: model files are thread-count-invariant.
  return json{
      {"num_trees", p.num_trees},
      {"sample_fraction", p.sample_fraction},
      {"tree",
       {{"mtry", p.tree.mtry},
        {"min_node_size", p.tree.min_node_size},
        {"min_events_per_child", p.tree.min_events_per_child},
        {"max_depth", p.tree.max_depth},
        {"split_rule",
         p.tree.split_rule == SplitRule::exact ? "exact" : "fast"},
        {"seed", p.tree.rng_seed}}}};
}

ForestParams params_from_json(const json& j) {
  ForestParams p;
  p.num_trees = j.at("num_trees").get<int>();
  p.sample_fraction = j.at("sample_fraction").get<double>();
  const json& t = j.at("tree");
  p.tree.mtry = t.at("mtry").get<int>();
  p.tree.min_node_size = t.at("min_node_size").get<int>();
  p.tree.min_events_per_child = t.at("min_events_per_child").get<int>();
  p.tree.max_depth = t.at("max_depth").get<int>();
  const std::string rule = t.at("split_rule").get<std::string>();
  if (rule != "exact" && rule != "fast")
    throw ModelIoError("unknown split_rule: " + rule);
  p.tree.split_rule = rule == "exact" ? SplitRule::exact : SplitRule::fast;
  p.tree.rng_seed = t.at("seed").get<std::uint64_t>();
  return p;
}

std::string fingerprint_hex(std::uint64_t fp) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fp));
  return buf;
}

}  // namespace

std::string model_to_json(const ForestModel& model) {
  json trees = json::array();
  for (const auto& record : model.trees) {
    json nodes = json::array();
    for (const auto& node : record.tree.nodes) {
      if (node.is_leaf()) {
        nodes.push_back(json{{"samples", node.samples}});
      } else {
        nodes.push_back(json{{"feature", node.feature},
                             {"threshold", node.threshold},
                             {"left", node.left},
                             {"right", node.right}});
      }
    }
    trees.push_back(json{{"nodes", std::move(nodes)}, {"inbag", record.inbag}});
  }
  json j{{"version", 1},
         {"params", params_to_json(model.params)},
         {"global_grid", model.global_grid},
         {"trees", std::move(trees)},
         {"fingerprint", fingerprint_hex(model.fingerprint)},
         {"n", model.n},
         {"p", model.p},
         {"outcomes", {{"times", model.times}, {"events", model.events}}}};
  return j.dump();
}

ForestModel model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ModelIoError(std::string("corrupt model payload: ") + e.what());
  }
  try {
    if (j.at("version").get<int>() != 1)
      throw ModelIoError("unsupported model version");
    ForestModel model;
    model.params = params_from_json(j.at("params"));
    model.global_grid = j.at("global_grid").get<std::vector<double>>();
    model.n = j.at("n").get<std::size_t>();
    model.p = j.at("p").get<std::size_t>();
    model.fingerprint =
        std::stoull(j.at("fingerprint").get<std::string>(), nullptr, 16);
    model.times = j.at("outcomes").at("times").get<std::vector<double>>();
    model.events =
        j.at("outcomes").at("events").get<std::vector<std::uint8_t>>();
    for (const json& jt : j.at("trees")) {
      TreeRecord record;
      record.inbag = jt.at("inbag").get<std::vector<int>>();
      for (const json& jn : jt.at("nodes")) {
        TreeNode node;
        if (jn.contains("samples")) {
          node.samples = jn.at("samples").get<std::vector<int>>();
        } else {
          node.feature = jn.at("feature").get<int>();
          node.threshold = jn.at("threshold").get<double>();
          node.left = jn.at("left").get<int>();
          node.right = jn.at("right").get<int>();
        }
        record.tree.nodes.push_back(std::move(node));
      }
      model.trees.push_back(std::move(record));
    }
    return model;
  } catch (const json::exception& e) {
    throw ModelIoError(std::string("corrupt model payload: ") + e.what());
  }
}

void save_model(const ForestModel& model, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw ModelIoError("cannot open file for writing: " + path);
    out << model_to_json(model);
    if (!out) throw ModelIoError("write failed: " + path);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw ModelIoError("rename failed: " + path);
}

ForestModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelIoError("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace survsplit

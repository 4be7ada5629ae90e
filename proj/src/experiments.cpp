#include "survsplit/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace survsplit {

namespace {

double oob_concordance_error(const ForestModel& model,
                             const SurvivalDataset& data) {
  std::vector<double> risk = oob_hazard_risk(model, data);
  std::vector<double> risk_ok, times_ok;
  std::vector<std::uint8_t> events_ok;
  for (std::size_t i = 0; i < risk.size(); ++i) {
    if (std::isnan(risk[i])) continue;
    risk_ok.push_back(risk[i]);
    times_ok.push_back(data.time(i));
    events_ok.push_back(data.event(i) ? 1 : 0);
  }
  return concordance_error(risk_ok, times_ok, events_ok);
}

ParityResult summarize(std::vector<ParityRecord> records) {
  ParityResult out;
  std::vector<double> a, b;
  for (const ParityRecord& r : records) {
    a.push_back(r.err_exact);
    b.push_back(r.err_approx);
  }
  out.records = std::move(records);
  out.summary = paired_delta(a, b);
  return out;
}

}  // namespace

ParityResult run_concordance_parity_rules(const SurvivalDataset& data,
                                          int reps, ForestParams params,
                                          SplitRule rule_a, SplitRule rule_b) {
  if (reps < 1) throw std::invalid_argument("reps must be >= 1");
  const std::uint64_t base_seed = params.tree.rng_seed;
  std::vector<ParityRecord> records;
  for (int r = 0; r < reps; ++r) {
    ParityRecord rec;
    rec.rep = r;
    rec.seed = base_seed + static_cast<std::uint64_t>(r);
    params.tree.rng_seed = rec.seed;

    params.tree.split_rule = rule_a;
    ForestModel model_a = train(data, params);
    params.tree.split_rule = rule_b;
    ForestModel model_b = train(data, params);
    if (model_a.fingerprint != model_b.fingerprint)
      throw std::logic_error("parity arms saw different data");

    rec.err_exact = oob_concordance_error(model_a, data);
    rec.err_approx = oob_concordance_error(model_b, data);
    rec.delta = rec.err_exact - rec.err_approx;
    records.push_back(rec);
  }
  return summarize(std::move(records));
}

ParityResult run_rmse_parity_rules(const PHConfig& cfg, int reps,
                                   ForestParams params, SplitRule rule_a,
                                   SplitRule rule_b) {
  if (reps < 1) throw std::invalid_argument("reps must be >= 1");
  const std::uint64_t base_seed = params.tree.rng_seed;
  std::vector<ParityRecord> records;
  for (int r = 0; r < reps; ++r) {
    PHConfig rep_cfg = cfg;
    rep_cfg.seed = cfg.seed + static_cast<std::uint64_t>(r);
    PHSample sample = gen_ph(rep_cfg);

    ParityRecord rec;
    rec.rep = r;
    rec.seed = base_seed + static_cast<std::uint64_t>(r);
    params.tree.rng_seed = rec.seed;

    auto arm_error = [&](SplitRule rule) {
      params.tree.split_rule = rule;
      ForestModel model = train(sample.data, params);
      std::vector<double> pred =
          oob_survival_at(model, sample.data, cfg.horizon);
      std::vector<double> truth_ok, pred_ok;
      for (std::size_t i = 0; i < pred.size(); ++i) {
        if (std::isnan(pred[i])) continue;
        truth_ok.push_back(sample.true_surv_at_h[i]);
        pred_ok.push_back(pred[i]);
      }
      return rmse_at_horizon(truth_ok, pred_ok);
    };
    rec.err_exact = arm_error(rule_a);
    rec.err_approx = arm_error(rule_b);
    rec.delta = rec.err_exact - rec.err_approx;
    records.push_back(rec);
  }
  return summarize(std::move(records));
}

double constant_predictor_rmse(const std::vector<double>& true_surv) {
  double mean = 0.0;
  for (double s : true_surv) mean += s;
  mean /= static_cast<double>(true_surv.size());
  double ss = 0.0;
  for (double s : true_surv) ss += (s - mean) * (s - mean);
  return std::sqrt(ss / static_cast<double>(true_surv.size()));
}

void write_parity_csv(const ParityResult& result, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << "rep,seed,err_exact,err_approx,delta\n";
    char buf[96];
    for (const ParityRecord& r : result.records) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g", r.err_exact,
                    r.err_approx, r.delta);
      out << r.rep << "," << r.seed << "," << buf << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed: " + path);
}

std::string parity_summary_markdown(const ParityResult& result) {
  std::ostringstream out;
  out << "| reps | median delta | q1 | q3 |\n";
  out << "|------|--------------|----|----|\n";
  char buf[96];
  std::snprintf(buf, sizeof(buf), "| %zu | %.3e | %.3e | %.3e |\n",
                result.records.size(), result.summary.median,
                result.summary.q1, result.summary.q3);
  out << buf;
  return out.str();
}

}  // namespace survsplit

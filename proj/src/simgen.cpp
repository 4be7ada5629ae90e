#include "survsplit/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "survsplit/rng.hpp"

namespace survsplit {

namespace {

// Distinct event-time count of a pilot Poisson draw at rate lambda.
int pilot_distinct(double lambda, std::size_t n, std::mt19937_64& rng) {
  std::poisson_distribution<long> pois(lambda);
  std::set<long> distinct;
  for (std::size_t i = 0; i < n; ++i) distinct.insert(pois(rng));
  return static_cast<int>(distinct.size());
}

// Finds lambda whose pilot distinct count is within +-15% of target.
// Doubling search for a bracket, then bisection.
double calibrate_lambda(const PoissonBenchConfig& cfg) {
  const double lo_target = 0.85 * cfg.target_M;
  const double hi_target = 1.15 * cfg.target_M;
  auto rng = make_rng(cfg.seed, 0xca11b8a7eULL);
  double lambda = static_cast<double>(cfg.target_M);

  double lo = lambda, hi = lambda;
  int count = pilot_distinct(lambda, cfg.n, rng);
  if (count >= lo_target && count <= hi_target) return lambda;
  if (count < lo_target) {
    for (int iter = 0; iter < 60; ++iter) {
      hi *= 2.0;
      count = pilot_distinct(hi, cfg.n, rng);
      if (count >= lo_target && count <= hi_target) return hi;
      if (count > hi_target) break;
      lo = hi;
    }
  } else {
    for (int iter = 0; iter < 60; ++iter) {
      lo /= 2.0;
      if (lo < 1e-6) break;
      count = pilot_distinct(lo, cfg.n, rng);
      if (count >= lo_target && count <= hi_target) return lo;
      if (count < lo_target) break;
      hi = lo;
    }
  }
  for (int iter = 0; iter < 60; ++iter) {
    const double mid = 0.5 * (lo + hi);
    count = pilot_distinct(mid, cfg.n, rng);
    if (count >= lo_target && count <= hi_target) return mid;
    (count < lo_target ? lo : hi) = mid;
  }
  throw ConfigError("Poisson rate calibration failed for target_M=" +
                    std::to_string(cfg.target_M));
}

}  // namespace

SurvivalDataset gen_poisson_bench(const PoissonBenchConfig& cfg) {
  if (cfg.target_M < 1) throw ConfigError("target_M must be >= 1");
  if (!(cfg.censor_rate >= 0.0 && cfg.censor_rate < 1.0))
    throw ConfigError("censor_rate must be in [0, 1)");
  if (cfg.n < 1 || cfg.p < 1) throw ConfigError("n and p must be >= 1");

  const double lambda = calibrate_lambda(cfg);
  auto rng = make_rng(cfg.seed, 0xda7a5e7ULL);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::poisson_distribution<long> pois(lambda);

  std::vector<std::vector<double>> cols(cfg.p, std::vector<double>(cfg.n));
  std::vector<std::string> names(cfg.p);
  for (std::size_t j = 0; j < cfg.p; ++j) {
    names[j] = "x" + std::to_string(j + 1);
    for (std::size_t i = 0; i < cfg.n; ++i) cols[j][i] = unif(rng);
  }
  std::vector<double> times(cfg.n);
  std::vector<std::uint8_t> events(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    long t = pois(rng);
    bool censored = unif(rng) < cfg.censor_rate;
    if (censored) {
      std::uniform_int_distribution<long> redraw(0, t);
      t = redraw(rng);
    }
    times[i] = static_cast<double>(t);
    events[i] = censored ? 0 : 1;
  }
  return SurvivalDataset(std::move(cols), std::move(names), std::move(times),
                         std::move(events));
}

PHSample gen_ph(const PHConfig& cfg) {
  if (cfg.n < 1 || cfg.p < 1) throw ConfigError("n and p must be >= 1");
  if (!(cfg.baseline_hazard > 0.0))
    throw ConfigError("baseline_hazard must be > 0");
  if (!(cfg.censor_rate >= 0.0 && cfg.censor_rate < 1.0))
    throw ConfigError("censor_rate must be in [0, 1)");

  std::vector<double> coef(cfg.p, 0.0);
  if (cfg.coef.empty()) {
    // Default signal on the first few covariates.
    const double defaults[] = {1.0, -1.0, 0.5, -0.5};
    for (std::size_t j = 0; j < cfg.p && j < 4; ++j) coef[j] = defaults[j];
  } else {
    for (std::size_t j = 0; j < cfg.p && j < cfg.coef.size(); ++j)
      coef[j] = cfg.coef[j];
  }

  auto rng = make_rng(cfg.seed, 0x9e6e7a7eULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  std::vector<std::vector<double>> cols(cfg.p, std::vector<double>(cfg.n));
  std::vector<std::string> names(cfg.p);
  for (std::size_t j = 0; j < cfg.p; ++j) {
    names[j] = "x" + std::to_string(j + 1);
    for (std::size_t i = 0; i < cfg.n; ++i) cols[j][i] = normal(rng);
  }

  std::vector<double> rates(cfg.n);
  std::vector<double> event_times(cfg.n);
  std::vector<double> truth(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    double lp = 0.0;
    for (std::size_t j = 0; j < cfg.p; ++j) lp += coef[j] * cols[j][i];
    rates[i] = cfg.baseline_hazard * std::exp(lp);
    event_times[i] = -std::log(1.0 - unif(rng)) / rates[i];
    truth[i] = std::exp(-rates[i] * cfg.horizon);
  }

  std::vector<double> times(cfg.n);
  std::vector<std::uint8_t> events(cfg.n);
  if (cfg.censor_rate == 0.0) {
    times = event_times;
    std::fill(events.begin(), events.end(), 1);
  } else {
    // Tune the exponential censoring rate so the expected censored fraction
    // over the drawn event times matches the target:
    // E_i[ P(C < T_i) ] = mean_i (1 - exp(-rc * T_i)).
    double lo = 1e-12, hi = 1.0;
    auto expected = [&](double rc) {
      double s = 0.0;
      for (double t : event_times) s += 1.0 - std::exp(-rc * t);
      return s / static_cast<double>(cfg.n);
    };
    while (expected(hi) < cfg.censor_rate && hi < 1e12) hi *= 2.0;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      (expected(mid) < cfg.censor_rate ? lo : hi) = mid;
    }
    const double censor_rate_param = 0.5 * (lo + hi);
    std::exponential_distribution<double> cens(censor_rate_param);
    for (std::size_t i = 0; i < cfg.n; ++i) {
      const double c = cens(rng);
      if (c < event_times[i]) {
        times[i] = c;
        events[i] = 0;
      } else {
        times[i] = event_times[i];
        events[i] = 1;
      }
    }
  }

  PHSample out{SurvivalDataset(std::move(cols), std::move(names),
                               std::move(times), std::move(events)),
               std::move(truth)};
  return out;
}

}  // namespace survsplit

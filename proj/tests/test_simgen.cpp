#include <doctest.h>

#include <cmath>
#include <set>

#include "survsplit/simgen.hpp"

using namespace survsplit;

namespace {

int distinct_event_times(const SurvivalDataset& data) {
  std::set<double> distinct;
  for (std::size_t i = 0; i < data.num_samples(); ++i)
    if (data.event(i)) distinct.insert(data.time(i));
  return static_cast<int>(distinct.size());
}

}  // namespace

TEST_CASE("poisson bench calibrates the distinct event-time count") {
  PoissonBenchConfig cfg;
  cfg.n = 20000;
  cfg.p = 2;
  cfg.target_M = 20;
  cfg.seed = 3;
  SurvivalDataset data = gen_poisson_bench(cfg);
  const int m = distinct_event_times(data);
  CHECK(m >= 17);
  CHECK(m <= 23);

  cfg.target_M = 260;
  cfg.seed = 4;
  const int m260 = distinct_event_times(gen_poisson_bench(cfg));
  CHECK(m260 >= 221);
  CHECK(m260 <= 299);
}

TEST_CASE("poisson bench censoring") {
  PoissonBenchConfig cfg;
  cfg.n = 5000;
  cfg.p = 1;
  cfg.target_M = 50;
  cfg.seed = 5;

  cfg.censor_rate = 0.0;
  SurvivalDataset all_events = gen_poisson_bench(cfg);
  CHECK(all_events.num_events() == all_events.num_samples());

  cfg.censor_rate = 0.10;
  SurvivalDataset censored = gen_poisson_bench(cfg);
  const double frac =
      1.0 - static_cast<double>(censored.num_events()) / censored.num_samples();
  CHECK(frac > 0.07);
  CHECK(frac < 0.13);
  // Censored times never exceed the redrawn bound; all times non-negative.
  for (std::size_t i = 0; i < censored.num_samples(); ++i)
    CHECK(censored.time(i) >= 0.0);
}

TEST_CASE("poisson bench is deterministic under a fixed seed") {
  PoissonBenchConfig cfg;
  cfg.n = 1000;
  cfg.p = 3;
  cfg.target_M = 30;
  cfg.seed = 6;
  SurvivalDataset a = gen_poisson_bench(cfg);
  SurvivalDataset b = gen_poisson_bench(cfg);
  CHECK(a.fingerprint() == b.fingerprint());
}

TEST_CASE("poisson bench config validation") {
  PoissonBenchConfig cfg;
  cfg.target_M = 0;
  CHECK_THROWS_AS(gen_poisson_bench(cfg), ConfigError);
  cfg.target_M = 10;
  cfg.censor_rate = 1.0;
  CHECK_THROWS_AS(gen_poisson_bench(cfg), ConfigError);
}

TEST_CASE("ph generator analytic truth with no covariate effect") {
  PHConfig cfg;
  cfg.n = 200;
  cfg.p = 4;
  cfg.baseline_hazard = 1.0;
  cfg.coef = {0, 0, 0, 0};
  cfg.censor_rate = 0.0;
  cfg.horizon = std::log(2.0);
  cfg.seed = 7;
  PHSample s = gen_ph(cfg);
  for (double v : s.true_surv_at_h)
    CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.data.num_events() == s.data.num_samples());
}

TEST_CASE("ph generator hits the target censoring fraction") {
  PHConfig cfg;
  cfg.n = 5000;
  cfg.p = 5;
  cfg.censor_rate = 0.2;
  cfg.seed = 8;
  PHSample s = gen_ph(cfg);
  const double frac =
      1.0 - static_cast<double>(s.data.num_events()) / s.data.num_samples();
  CHECK(frac > 0.17);
  CHECK(frac < 0.23);

  PHSample again = gen_ph(cfg);
  CHECK(again.data.fingerprint() == s.data.fingerprint());
}

TEST_CASE("ph truth matches the empirical survival of an uncensored draw") {
  // With coef = 0 every sample shares one survival function; the empirical
  // fraction surviving past h must match the analytic value within a
  // 3-sigma binomial bound.
  PHConfig cfg;
  cfg.n = 20000;
  cfg.p = 2;
  cfg.baseline_hazard = 0.25;
  cfg.coef = {0, 0};
  cfg.censor_rate = 0.0;
  cfg.horizon = 2.0;
  cfg.seed = 9;
  PHSample s = gen_ph(cfg);
  const double truth = std::exp(-0.25 * 2.0);
  int surviving = 0;
  for (std::size_t i = 0; i < s.data.num_samples(); ++i)
    surviving += s.data.time(i) > cfg.horizon;
  const double emp = static_cast<double>(surviving) / s.data.num_samples();
  const double sigma = std::sqrt(truth * (1 - truth) / s.data.num_samples());
  CHECK(std::abs(emp - truth) <= 3.0 * sigma);
}

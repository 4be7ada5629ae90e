#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "survsplit/dataset.hpp"

namespace survsplit {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Timing benchmark generator: integer survival times drawn from a Poisson
/// distribution whose rate is calibrated so the realized number of distinct
/// event times lands near target_M.
struct PoissonBenchConfig {
  std::size_t n = 20000;
  std::size_t p = 25;
  int target_M = 20;
  double censor_rate = 0.10;
  std::uint64_t seed = 0;
};

SurvivalDataset gen_poisson_bench(const PoissonBenchConfig& cfg);

/// Proportional-hazards generator with analytic conditional survival:
/// T ~ Exponential(baseline * exp(x . coef)), covariates i.i.d. N(0,1),
/// independent exponential censoring tuned to censor_rate.
struct PHConfig {
  std::size_t n = 2000;
  std::size_t p = 10;
  double baseline_hazard = 0.1;
  std::vector<double> coef;  // padded/truncated to p; default signal if empty
  double censor_rate = 0.2;
  double horizon = 5.0;
  std::uint64_t seed = 0;
};

struct PHSample {
  SurvivalDataset data;
  std::vector<double> true_surv_at_h;  // exact S(horizon; x_i)
};

PHSample gen_ph(const PHConfig& cfg);

}  // namespace survsplit

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "survsplit/metrics.hpp"

using namespace survsplit;

TEST_CASE("concordance_error fixtures") {
  std::vector<double> times{1, 2, 3};
  std::vector<std::uint8_t> events{1, 1, 1};

  std::vector<double> perfect{3, 2, 1};  // risk opposite to time
  CHECK(concordance_error(perfect, times, events) == doctest::Approx(0.0));

  std::vector<double> ties{1, 1, 1};
  CHECK(concordance_error(ties, times, events) == doctest::Approx(0.5));

  std::vector<double> mixed{3, 1, 2};
  // Comparable pairs (0,1),(0,2),(1,2); concordant: yes, yes, no.
  CHECK(concordance_error(mixed, times, events) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("concordance_error censoring rules and errors") {
  // Censored smaller time is not comparable.
  std::vector<double> times{1, 2};
  std::vector<std::uint8_t> events{0, 1};
  std::vector<double> risk{1, 2};
  CHECK_THROWS_AS(concordance_error(risk, times, events),
                  MetricUndefinedError);

  std::vector<double> short_risk{1};
  CHECK_THROWS_AS(concordance_error(short_risk, times, events),
                  std::invalid_argument);
}

TEST_CASE("concordance_error rank invariance and complement") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 30;
    std::vector<double> times(n), risk(n), neg(n), warped(n);
    std::vector<std::uint8_t> events(n);
    for (int i = 0; i < n; ++i) {
      times[i] = unif(rng);
      risk[i] = unif(rng);  // continuous, no ties
      events[i] = unif(rng) < 0.7 ? 1 : 0;
      neg[i] = -risk[i];
      warped[i] = std::exp(3.0 * risk[i]);
    }
    if (std::none_of(events.begin(), events.end(), [](auto e) { return e; }))
      continue;
    const double pe = concordance_error(risk, times, events);
    CHECK(concordance_error(warped, times, events) == doctest::Approx(pe));
    CHECK(concordance_error(neg, times, events) ==
          doctest::Approx(1.0 - pe).epsilon(1e-12));
  }
}

TEST_CASE("rmse_at_horizon") {
  std::vector<double> a{0.2, 0.8};
  CHECK(rmse_at_horizon(a, a) == 0.0);
  std::vector<double> ones{1, 1, 1};
  std::vector<double> zeros{0, 0, 0};
  CHECK(rmse_at_horizon(ones, zeros) == doctest::Approx(1.0));
  std::vector<double> truth{0.5, 0.5};
  std::vector<double> pred{0.6, 0.4};
  CHECK(rmse_at_horizon(truth, pred) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS(rmse_at_horizon(truth, ones));
}

TEST_CASE("paired_delta fixtures and sort-based quartile oracle") {
  std::vector<double> a{0.3};
  std::vector<double> b{0.29};
  auto s = paired_delta(a, b);
  CHECK(s.deltas[0] == doctest::Approx(0.01).epsilon(1e-12));

  std::vector<double> same{0.1, 0.2, 0.3};
  auto z = paired_delta(same, same);
  for (double d : z.deltas) CHECK(d == 0.0);
  CHECK(z.median == 0.0);

  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int rep = 0; rep < 30; ++rep) {
    std::uniform_int_distribution<int> n_dist(1, 40);
    const int n = n_dist(rng);
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = unif(rng);
      y[i] = unif(rng);
    }
    auto summary = paired_delta(x, y);
    std::vector<double> sorted = summary.deltas;
    std::sort(sorted.begin(), sorted.end());
    auto interp = [&](double q) {
      const double pos = q * (n - 1);
      const int lo = static_cast<int>(std::floor(pos));
      const int hi = static_cast<int>(std::ceil(pos));
      return sorted[lo] + (pos - lo) * (sorted[hi] - sorted[lo]);
    };
    CHECK(summary.median == doctest::Approx(interp(0.5)).epsilon(1e-9));
    CHECK(summary.q1 == doctest::Approx(interp(0.25)).epsilon(1e-9));
    CHECK(summary.q3 == doctest::Approx(interp(0.75)).epsilon(1e-9));
  }
}

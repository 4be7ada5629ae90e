#include <doctest.h>

#include <cmath>

#include "survsplit/estimators.hpp"
#include "survsplit/time_grid.hpp"
#include "test_helpers.hpp"

using namespace survsplit;

TEST_CASE("kaplan_meier fixtures") {
  std::vector<double> one_time{3.0};
  std::vector<std::uint8_t> one_event{1};
  std::vector<double> grid{3.0};
  CHECK(kaplan_meier(one_time, one_event, grid).values[0] == 0.0);

  std::vector<double> times{1, 2, 3};
  std::vector<std::uint8_t> censored{0, 0, 0};
  std::vector<double> grid2{0.5, 1.5, 4.0};
  for (double v : kaplan_meier(times, censored, grid2).values) CHECK(v == 1.0);

  SurvivalDataset d1 = testutil::d1_dataset();
  std::vector<double> grid4{1, 2, 3, 4};
  StepCurve s = kaplan_meier(d1.times(), d1.events(), grid4);
  const std::vector<double> expected{0.8, 0.6, 0.3, 0.0};
  for (int t = 0; t < 4; ++t)
    CHECK(s.values[t] == doctest::Approx(expected[t]).epsilon(1e-12));
}

TEST_CASE("nelson_aalen fixtures") {
  SurvivalDataset d1 = testutil::d1_dataset();
  std::vector<double> grid4{1, 2, 3, 4};
  StepCurve h = nelson_aalen(d1.times(), d1.events(), grid4);
  const std::vector<double> expected{0.2, 0.45, 0.95, 1.95};
  for (int t = 0; t < 4; ++t)
    CHECK(h.values[t] == doctest::Approx(expected[t]).epsilon(1e-12));

  std::vector<double> times{1, 2};
  std::vector<std::uint8_t> censored{0, 0};
  for (double v : nelson_aalen(times, censored, grid4).values) CHECK(v == 0.0);

  std::vector<double> one_time{5.0};
  std::vector<std::uint8_t> one_event{1};
  std::vector<double> grid{4.0, 5.0, 6.0};
  StepCurve jump = nelson_aalen(one_time, one_event, grid);
  CHECK(jump.values[0] == 0.0);
  CHECK(jump.values[1] == 1.0);
  CHECK(jump.values[2] == 1.0);
}

TEST_CASE("errors and step conventions") {
  std::vector<double> empty;
  std::vector<std::uint8_t> empty_e;
  std::vector<double> grid{1.0};
  CHECK_THROWS(kaplan_meier(empty, empty_e, grid));
  std::vector<double> times{1.0};
  std::vector<std::uint8_t> events{1};
  std::vector<double> bad_grid{2.0, 2.0};
  CHECK_THROWS(kaplan_meier(times, events, bad_grid));

  StepCurve s = kaplan_meier(times, events, grid);
  CHECK(s.value_at(0.5, 1.0) == 1.0);   // before the first knot
  CHECK(s.value_at(99.0, 1.0) == 0.0);  // flat extension past the end
}

TEST_CASE("nelson_aalen equals the grid cumulative sums on full nodes") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 100; ++rep) {
    SurvivalDataset data = testutil::random_node(rng);
    NodeTimeGrid grid = build_time_grid(NodeView::all(data));
    StepCurve h = nelson_aalen(data.times(), data.events(), grid.failure_times);
    for (std::size_t t = 0; t < grid.grid_size(); ++t)
      CHECK(h.values[t] == doctest::Approx(grid.cum_alpha[t]).epsilon(1e-12));
  }
}

TEST_CASE("S(t) <= exp(-H(t)) pointwise") {
  std::mt19937_64 rng(43);
  for (int rep = 0; rep < 100; ++rep) {
    SurvivalDataset data = testutil::random_node(rng);
    std::vector<double> grid;
    for (double t = 0.5; t < 55.0; t += 2.5) grid.push_back(t);
    StepCurve s = kaplan_meier(data.times(), data.events(), grid);
    StepCurve h = nelson_aalen(data.times(), data.events(), grid);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      CHECK(s.values[g] <= std::exp(-h.values[g]) + 1e-12);
      CHECK(s.values[g] >= 0.0);
      CHECK(s.values[g] <= 1.0);
      if (g > 0) {
        CHECK(s.values[g] <= s.values[g - 1]);
        CHECK(h.values[g] >= h.values[g - 1]);
      }
    }
  }
}

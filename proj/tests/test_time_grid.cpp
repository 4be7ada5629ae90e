#include <doctest.h>

#include <cmath>

#include "survsplit/time_grid.hpp"
#include "test_helpers.hpp"

using namespace survsplit;
using testutil::close;

TEST_CASE("D1 fixture grid") {
  SurvivalDataset data = testutil::d1_dataset();
  NodeTimeGrid grid = build_time_grid(NodeView::all(data));

  CHECK(grid.failure_times == std::vector<double>{1, 2, 3, 4});
  CHECK(grid.d == std::vector<int>{1, 1, 1, 1});
  CHECK(grid.at_risk == std::vector<int>{5, 4, 2, 1});
  const std::vector<double> alpha{0.2, 0.25, 0.5, 1.0};
  const std::vector<double> beta{0.04, 0.0625, 0.25, 0.0};
  const std::vector<double> cum{0.2, 0.45, 0.95, 1.95};
  const std::vector<double> gamma{0.2, 0.45, 0.45, 0.95, 1.95};
  for (int t = 0; t < 4; ++t) {
    CHECK(grid.alpha[t] == doctest::Approx(alpha[t]).epsilon(1e-12));
    CHECK(grid.beta[t] == doctest::Approx(beta[t]).epsilon(1e-12));
    CHECK(grid.cum_alpha[t] == doctest::Approx(cum[t]).epsilon(1e-12));
  }
  for (int i = 0; i < 5; ++i)
    CHECK(grid.gamma[i] == doctest::Approx(gamma[i]).epsilon(1e-12));
  CHECK(grid.gamma_bar == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("degenerate single-sample node") {
  SurvivalDataset data({{0.0}}, {"x1"}, {7.0}, {1});
  NodeTimeGrid grid = build_time_grid(NodeView::all(data));
  CHECK(grid.grid_size() == 1);
  CHECK(grid.d == std::vector<int>{1});
  CHECK(grid.at_risk == std::vector<int>{1});
  CHECK(grid.alpha[0] == 1.0);
  CHECK(grid.beta[0] == 0.0);  // Y_t = 1 rule
}

TEST_CASE("all-censored node throws NoEventsError") {
  SurvivalDataset data({{0.0, 1.0}}, {"x1"}, {1.0, 2.0}, {0, 0});
  CHECK_THROWS_AS(build_time_grid(NodeView::all(data)), NoEventsError);
}

TEST_CASE("censored sample before first failure time") {
  SurvivalDataset data({{0, 1, 2}}, {"x1"}, {0.5, 1.0, 2.0}, {0, 1, 1});
  NodeTimeGrid grid = build_time_grid(NodeView::all(data));
  CHECK(grid.sample_grid_index[0] == kNoGridIndex);
  CHECK(grid.gamma[0] == 0.0);
  // ... and it is in no risk set: Y at the first failure time excludes it.
  CHECK(grid.at_risk[0] == 2);
}

TEST_CASE("censored tie with a failure time maps to that slot") {
  SurvivalDataset data({{0, 1, 2}}, {"x1"}, {2.0, 2.0, 3.0}, {1, 0, 1});
  NodeTimeGrid grid = build_time_grid(NodeView::all(data));
  CHECK(grid.sample_grid_index[1] == 0);
  CHECK(grid.at_risk[0] == 3);
}

TEST_CASE("randomized nodes: brute-force recount and conservation") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    SurvivalDataset data = testutil::random_node(rng);
    NodeView node = NodeView::all(data);
    NodeTimeGrid grid = build_time_grid(node);
    testutil::GridOracle oracle = testutil::grid_oracle(node);

    REQUIRE(grid.failure_times == oracle.failure_times);
    CHECK(grid.d == oracle.d);
    CHECK(grid.at_risk == oracle.at_risk);

    // Structural invariants.
    int total_events = 0;
    for (std::size_t t = 0; t < grid.grid_size(); ++t) {
      CHECK(grid.d[t] >= 1);
      CHECK(grid.d[t] <= grid.at_risk[t]);
      if (t > 0) {
        CHECK(grid.at_risk[t] <= grid.at_risk[t - 1]);
        CHECK(grid.cum_alpha[t] > grid.cum_alpha[t - 1]);
      }
      CHECK(grid.alpha[t] > 0.0);
      CHECK(grid.alpha[t] <= 1.0);
      CHECK(grid.beta[t] >= 0.0);
      total_events += grid.d[t];
    }
    CHECK(total_events == static_cast<int>(node.count_events()));
    CHECK(close(grid.gamma_bar, total_events));
  }
}

TEST_CASE("rank invariance under increasing time transforms") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 50; ++rep) {
    SurvivalDataset data = testutil::random_node(rng);
    std::vector<double> warped(data.times());
    for (double& t : warped) t = std::exp(t / 10.0);
    std::vector<std::vector<double>> cols;
    for (std::size_t j = 0; j < data.num_features(); ++j)
      cols.push_back(data.column(j));
    SurvivalDataset warped_data(std::move(cols), data.covariate_names(),
                                std::move(warped), data.events());

    NodeTimeGrid a = build_time_grid(NodeView::all(data));
    NodeTimeGrid b = build_time_grid(NodeView::all(warped_data));
    CHECK(a.d == b.d);
    CHECK(a.at_risk == b.at_risk);
    CHECK(a.sample_grid_index == b.sample_grid_index);
    for (std::size_t i = 0; i < a.gamma.size(); ++i)
      CHECK(close(a.gamma[i], b.gamma[i]));
  }
}

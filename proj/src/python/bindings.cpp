#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "survsplit/dataset.hpp"
#include "survsplit/estimators.hpp"
#include "survsplit/experiments.hpp"
#include "survsplit/forest.hpp"
#include "survsplit/metrics.hpp"
#include "survsplit/simgen.hpp"

namespace py = pybind11;
using namespace survsplit;

namespace {

SurvivalDataset make_dataset(py::array_t<double, py::array::c_style> X,
                             std::vector<double> times,
                             std::vector<std::uint8_t> events) {
  if (X.ndim() != 2) throw std::invalid_argument("X must be 2-dimensional");
  const std::size_t n = static_cast<std::size_t>(X.shape(0));
  const std::size_t p = static_cast<std::size_t>(X.shape(1));
  auto r = X.unchecked<2>();
  std::vector<std::vector<double>> cols(p, std::vector<double>(n));
  std::vector<std::string> names(p);
  for (std::size_t j = 0; j < p; ++j) {
    names[j] = "x" + std::to_string(j + 1);
    for (std::size_t i = 0; i < n; ++i) cols[j][i] = r(i, j);
  }
  return SurvivalDataset(std::move(cols), std::move(names), std::move(times),
                         std::move(events));
}

ForestParams make_params(int num_trees, double sample_fraction, int mtry,
                         int min_node_size, const std::string& split_rule,
                         std::uint64_t seed, int num_threads) {
  ForestParams params;
  params.num_trees = num_trees;
  params.sample_fraction = sample_fraction;
  params.num_threads = num_threads;
  params.tree.mtry = mtry;
  params.tree.min_node_size = min_node_size;
  params.tree.rng_seed = seed;
  if (split_rule == "exact")
    params.tree.split_rule = SplitRule::exact;
  else if (split_rule == "fast")
    params.tree.split_rule = SplitRule::fast;
  else
    throw std::invalid_argument("split_rule must be 'exact' or 'fast'");
  return params;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Survival forests with exact and constant-time log-rank splits";

  py::class_<SurvivalDataset>(m, "SurvivalDataset")
      .def(py::init(&make_dataset), py::arg("X"), py::arg("times"),
           py::arg("events"))
      .def_property_readonly("n", &SurvivalDataset::num_samples)
      .def_property_readonly("p", &SurvivalDataset::num_features)
      .def_property_readonly("num_events", &SurvivalDataset::num_events)
      .def_property_readonly("times", &SurvivalDataset::times)
      .def_property_readonly("events",
                             [](const SurvivalDataset& d) {
                               return std::vector<int>(d.events().begin(),
                                                       d.events().end());
                             })
      .def_property_readonly("fingerprint", &SurvivalDataset::fingerprint);

  py::class_<StepCurve>(m, "StepCurve")
      .def_property_readonly("grid",
                             [](const StepCurve& c) { return c.grid; })
      .def_property_readonly("values",
                             [](const StepCurve& c) { return c.values; })
      .def("value_at", &StepCurve::value_at, py::arg("t"),
           py::arg("before_first") = 1.0);

  py::class_<ForestModel>(m, "ForestModel")
      .def_property_readonly("num_trees",
                             [](const ForestModel& f) { return f.trees.size(); })
      .def_property_readonly("global_grid",
                             [](const ForestModel& f) { return f.global_grid; })
      .def("predict_curve",
           [](const ForestModel& f, std::vector<double> x) {
             return predict_curve(f, x);
           },
           py::arg("x"))
      .def("predict_at",
           [](const ForestModel& f, std::vector<double> x, double h) {
             return predict_curve(f, x).value_at(h, 1.0);
           },
           py::arg("x"), py::arg("horizon"))
      .def("oob_survival_at",
           [](const ForestModel& f, const SurvivalDataset& d, double h) {
             return oob_survival_at(f, d, h);
           })
      .def("oob_hazard_risk",
           [](const ForestModel& f, const SurvivalDataset& d) {
             return oob_hazard_risk(f, d);
           })
      .def("to_json", &model_to_json)
      .def("save", &save_model, py::arg("path"));

  m.def("load_model", &load_model, py::arg("path"));
  m.def("load_csv", &load_csv, py::arg("path"), py::arg("time_col") = "time",
        py::arg("event_col") = "event");
  m.def("write_csv", &write_csv, py::arg("data"), py::arg("path"));

  m.def(
      "train",
      [](const SurvivalDataset& data, int num_trees, double sample_fraction,
         int mtry, int min_node_size, const std::string& split_rule,
         std::uint64_t seed, int num_threads) {
        return train(data, make_params(num_trees, sample_fraction, mtry,
                                       min_node_size, split_rule, seed,
                                       num_threads));
      },
      py::arg("data"), py::arg("num_trees") = 100,
      py::arg("sample_fraction") = 0.5, py::arg("mtry") = 0,
      py::arg("min_node_size") = 15, py::arg("split_rule") = "fast",
      py::arg("seed") = 42, py::arg("num_threads") = 0);

  m.def("kaplan_meier",
        [](std::vector<double> times, std::vector<std::uint8_t> events,
           std::vector<double> grid) {
          return kaplan_meier(times, events, grid);
        },
        py::arg("times"), py::arg("events"), py::arg("eval_grid"));
  m.def("nelson_aalen",
        [](std::vector<double> times, std::vector<std::uint8_t> events,
           std::vector<double> grid) {
          return nelson_aalen(times, events, grid);
        },
        py::arg("times"), py::arg("events"), py::arg("eval_grid"));

  m.def("concordance_error",
        [](std::vector<double> risk, std::vector<double> times,
           std::vector<std::uint8_t> events) {
          return concordance_error(risk, times, events);
        },
        py::arg("risk_scores"), py::arg("times"), py::arg("events"));
  m.def("rmse_at_horizon",
        [](std::vector<double> a, std::vector<double> b) {
          return rmse_at_horizon(a, b);
        },
        py::arg("true_surv"), py::arg("pred_surv"));

  m.def(
      "gen_ph",
      [](std::size_t n, std::size_t p, double baseline_hazard,
         std::vector<double> coef, double censor_rate, double horizon,
         std::uint64_t seed) {
        PHConfig cfg{n, p, baseline_hazard, std::move(coef), censor_rate,
                     horizon, seed};
        PHSample s = gen_ph(cfg);
        return py::make_tuple(std::move(s.data), std::move(s.true_surv_at_h));
      },
      py::arg("n"), py::arg("p"), py::arg("baseline_hazard") = 0.1,
      py::arg("coef") = std::vector<double>{}, py::arg("censor_rate") = 0.2,
      py::arg("horizon") = 5.0, py::arg("seed") = 0);

  m.def(
      "gen_poisson_bench",
      [](std::size_t n, std::size_t p, int target_M, double censor_rate,
         std::uint64_t seed) {
        PoissonBenchConfig cfg{n, p, target_M, censor_rate, seed};
        return gen_poisson_bench(cfg);
      },
      py::arg("n"), py::arg("p"), py::arg("target_M"),
      py::arg("censor_rate") = 0.10, py::arg("seed") = 0);
}

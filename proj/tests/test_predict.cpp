#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helios/error.hpp"
#include "helios/predict.hpp"
#include "support.hpp"

using namespace helios;

namespace {

ModelConfig small_config() {
  ModelConfig cfg;
  cfg.season_window = 24;
  return cfg;
}

Dataset constant_load(std::size_t n, double load) {
  const Dataset base = testing::random_dataset(n, 9);
  std::vector<Row> rows(base.rows().begin(), base.rows().end());
  for (Row& r : rows) r.substation.heat_load = load;
  return Dataset(std::move(rows));
}

// Space heating off, hot water a flat 10 kW, loss a pure AR(1) with a = 0.5.
HeliosModel simple_model() {
  const auto sets = contexts::default_context_sets();
  HeliosModel m = make_model(small_config(), sets, default_priors(sets));
  m.params.space.a.setZero();
  m.params.space.beta = {0.0, 0.0, 0.0};
  m.params.hot_water.q.setConstant(10.0);
  m.params.hot_water.lambda = 0.0;
  m.params.loss.a.setConstant(0.5);
  m.params.loss.beta = 0.0;
  return m;
}

}  // namespace

TEST_CASE("residual targets subtract the other two predictions") {
  const HeliosModel m = simple_model();
  const Dataset ds = constant_load(60, 100.0);
  const ComponentTargets t = residual_targets(m, ds);
  REQUIRE(t.loss.size() == 60);
  for (Eigen::Index k = 1; k < 60; ++k) {
    CHECK(t.loss[k] == doctest::Approx(100.0 - 0.0 - 10.0));
    CHECK(t.space[k] == doctest::Approx(100.0 - 10.0 - 45.0));
    CHECK(t.hot_water[k] == doctest::Approx(100.0 - 0.0 - 45.0));
  }
}

TEST_CASE("residual targets are floored at zero") {
  HeliosModel m = simple_model();
  m.params.hot_water.q.setConstant(150.0);
  const ComponentTargets t = residual_targets(m, constant_load(60, 100.0));
  CHECK(t.loss.minCoeff() == 0.0);
  CHECK(t.space.minCoeff() == 0.0);
}

TEST_CASE("decomposition totals are the sum of the components") {
  const auto sets = contexts::default_context_sets();
  const HeliosModel m = make_model(small_config(), sets, default_priors(sets));
  const Dataset ds = testing::random_dataset(200, 2);
  for (PredictionMode mode : {PredictionMode::TeacherForced, PredictionMode::Recursive}) {
    const Decomposition d = predict_decomposed(m, ds, mode);
    CHECK(d.size() == 200 - m.config.warmup_rows());
    for (Eigen::Index k = 0; k < d.size(); ++k) {
      CHECK(d.total[k] == doctest::Approx(d.space[k] + d.hot_water[k] + d.loss[k]));
      CHECK(d.space[k] >= 0.0);
      CHECK(d.loss[k] >= 0.0);
    }
  }
  CHECK_THROWS_AS(predict_decomposed(m, testing::random_dataset(10, 2), PredictionMode::TeacherForced),
                  InsufficientHistory);
}

TEST_CASE("a one-step forecast equals the teacher-forced prediction") {
  const auto sets = contexts::default_context_sets();
  const HeliosModel m = make_model(small_config(), sets, default_priors(sets));
  const Dataset ds = testing::random_dataset(120, 6);
  const Decomposition tf = predict_decomposed(m, ds, PredictionMode::TeacherForced);
  const Decomposition f = forecast(m, ds.slice(0, 100), 1, ds.slice(100, 120));
  REQUIRE(f.size() == 1);
  const Eigen::Index row = 100 - m.config.warmup_rows();
  CHECK(f.timestamps[0] == ds[100].calendar.timestamp);
  CHECK(f.total[0] == doctest::Approx(tf.total[row]));
}

TEST_CASE("multi-step forecasts feed back their own outputs") {
  const HeliosModel m = simple_model();
  const Dataset ds = constant_load(60, 100.0);
  const Decomposition f = forecast(m, ds.slice(0, 50), 3, ds.slice(50, 60));
  // Loss history ends at 90 kW; the AR(1) halves it each step.
  CHECK(f.loss[0] == doctest::Approx(45.0));
  CHECK(f.loss[1] == doctest::Approx(22.5));
  CHECK(f.loss[2] == doctest::Approx(11.25));
  CHECK(f.hot_water[2] == doctest::Approx(10.0));
}

TEST_CASE("forecasts need contiguous exogenous rows") {
  const HeliosModel m = simple_model();
  const Dataset ds = constant_load(60, 100.0);
  CHECK_THROWS_AS(forecast(m, ds.slice(0, 50), 12, ds.slice(50, 60)), MissingExogenous);
  CHECK_THROWS_AS(forecast(m, ds.slice(0, 50), 3, ds.slice(52, 60)), MissingExogenous);
  CHECK(forecast(m, ds.slice(0, 50), 0, ds.slice(50, 60)).size() == 0);
}

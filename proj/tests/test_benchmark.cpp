#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "helios/benchmark.hpp"
#include "helios/error.hpp"
#include "support.hpp"

using namespace helios;
using namespace helios::evaluation;

TEST_CASE("NC sets every certainty to zero") {
  const auto base = contexts::default_context_sets();
  const auto nc = make_context_variants(base, ContextVariant::NC, 1);
  for (const auto* set : {&nc.setpoint, &nc.season, &nc.hot_water})
    for (const auto& c : set->contexts) CHECK(c.certainty == 0.0);
  const Dataset ds = testing::random_dataset(48, 1);
  const Eigen::MatrixXd w = contexts::weight_matrix(nc.hot_water, ds, Eigen::VectorXd::Zero(48));
  CHECK((w.array() == 1.0).all());
  CHECK(make_context_variants(base, ContextVariant::Expert, 1) == base);
}

TEST_CASE("WC moves supports away from their contexts deterministically") {
  const auto base = contexts::default_context_sets();
  const auto wc = make_context_variants(base, ContextVariant::WC, 11);
  CHECK(wc == make_context_variants(base, ContextVariant::WC, 11));
  CHECK_FALSE(wc == base);
  for (const auto* pair : {&wc.setpoint, &wc.hot_water}) {
    const auto& orig = pair == &wc.setpoint ? base.setpoint : base.hot_water;
    REQUIRE(pair->size() == orig.size());
    for (std::size_t c = 0; c < orig.size(); ++c) {
      CHECK(pair->contexts[c].name == orig.contexts[c].name);
      CHECK(pair->contexts[c].certainty == orig.contexts[c].certainty);
      CHECK_FALSE(pair->contexts[c].hours == orig.contexts[c].hours);
    }
    CHECK_NOTHROW(pair->validate());
  }
  // The two season thresholds swap.
  CHECK(wc.season.contexts[0].season == base.season.contexts[1].season);
}

TEST_CASE("variant names parse") {
  CHECK(parse_variant("nc") == ContextVariant::NC);
  CHECK(variant_name(ContextVariant::WC) == "wc");
  CHECK_THROWS_AS(parse_variant("random"), ConfigError);
}

TEST_CASE("rolling forecasts cover the test set with pooled predictions") {
  const Dataset ds = testing::random_dataset(400, 3);
  const Dataset train = ds.slice(0, 300);
  const Dataset test = ds.slice(300, 400);
  const BaselineModel m = fit_baseline(default_baseline(BaselineKind::ARX), train);
  const RollingPredictions r = rolling_forecast("ARX", m, train, test, 12, 12);
  CHECK(r.timestamps.size() == 100);
  CHECK(r.timestamps.front() == test[0].calendar.timestamp);
  CHECK(r.actual == test.heat_load());

  const Eigen::MatrixXd X = baseline_features(ds, m.harmonics);
  const Eigen::VectorXd first = forecast_baseline(m, X, ds.heat_load(), 300, 12);
  CHECK(r.predicted.head(12).isApprox(first));
  const Eigen::VectorXd last = forecast_baseline(m, X, ds.heat_load(), 396, 4);
  CHECK(r.predicted.tail(4).isApprox(last));

  CHECK_THROWS_AS(rolling_forecast("ARX", m, train, ds.slice(301, 400), 12, 12), MissingExogenous);
  CHECK_THROWS_AS(rolling_forecast("ARX", m, train, test, 0, 12), ConfigError);
}

TEST_CASE("benchmark rows and csv output") {
  RollingPredictions a{"A", {}, Eigen::VectorXd(3), Eigen::VectorXd(3), std::nullopt};
  for (int i = 0; i < 3; ++i) a.timestamps.push_back(testing::kJan2018 + i * kSecondsPerHour);
  a.actual << 1.0, 2.0, 3.0;
  a.predicted << 1.0, 2.0, 4.0;
  const auto rows = benchmark({a}, 12);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].model == "A");
  CHECK(rows[0].metrics.horizon == 12);
  CHECK(rows[0].metrics.mae == doctest::Approx(1.0 / 3.0));

  std::ostringstream out;
  write_results_csv(out, rows);
  CHECK(out.str().rfind("model,period,horizon,R2,RMSE,MAE,MAPE,count,mape_skipped\nA,hourly,12,", 0) == 0);
  std::ostringstream preds;
  write_predictions_csv(preds, {a});
  CHECK(preds.str().rfind("model,timestamp,actual,predicted,Q_space,Q_hot_water,Q_loss\nA,2018-01-01T00:00:00Z,1,1,,,\n", 0) == 0);
}

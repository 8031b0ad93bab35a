#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "helios/error.hpp"
#include "helios/metrics.hpp"
#include "support.hpp"

using namespace helios;
using namespace helios::evaluation;

TEST_CASE("metrics on a two-point example") {
  Eigen::VectorXd y(2), yhat(2);
  y << 10.0, 20.0;
  yhat << 12.0, 16.0;
  const MetricsReport r = compute_metrics(y, yhat);
  CHECK(r.rmse == doctest::Approx(std::sqrt(10.0)));
  CHECK(r.mae == doctest::Approx(3.0));
  CHECK(r.mape == doctest::Approx(20.0));
  CHECK(r.r2 == doctest::Approx(0.6));
  CHECK(r.count == 2);
}

TEST_CASE("perfect predictions and skipped zero targets") {
  Eigen::VectorXd y(3);
  y << 0.0, 5.0, 10.0;
  const MetricsReport r = compute_metrics(y, y);
  CHECK(r.rmse == 0.0);
  CHECK(r.r2 == 1.0);
  CHECK(r.mape == 0.0);
  CHECK(r.mape_skipped == 1);
}

TEST_CASE("metric input errors") {
  CHECK_THROWS_AS(compute_metrics(Eigen::VectorXd::Ones(3), Eigen::VectorXd::Ones(2)), LengthMismatch);
  CHECK_THROWS_AS(compute_metrics(Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1)), LengthMismatch);
  CHECK_THROWS_AS(compute_metrics(Eigen::VectorXd::Ones(3), Eigen::VectorXd::Zero(3)), DegenerateVariance);
}

TEST_CASE("daily aggregation sums complete days") {
  std::vector<Timestamp> ts;
  for (int h = 0; h < 48; ++h) ts.push_back(testing::kJan2018 + h * kSecondsPerHour);
  Eigen::VectorXd y(48);
  for (int h = 0; h < 48; ++h) y[h] = h < 24 ? 1.0 : 2.0;
  const Eigen::VectorXd yhat = 1.1 * y;
  const MetricsReport r = aggregate_horizon_metrics(ts, y, yhat, Period::Daily);
  CHECK(r.count == 2);
  CHECK(r.mape == doctest::Approx(10.0));
  CHECK(r.mae == doctest::Approx((2.4 + 4.8) / 2));
  CHECK(r.period == Period::Daily);
}

TEST_CASE("partial buckets are dropped and coverage is required") {
  std::vector<Timestamp> ts;
  for (int h = 6; h < 60; ++h) ts.push_back(testing::kJan2018 + h * kSecondsPerHour);
  const Eigen::VectorXd y = Eigen::VectorXd::LinSpaced(54, 1.0, 54.0);
  const MetricsReport r = aggregate_horizon_metrics(ts, y, y, Period::Daily);
  CHECK(r.count == 1);  // only 2018-01-02 is complete
  CHECK(std::isnan(r.r2));
  CHECK_THROWS_AS(aggregate_horizon_metrics(ts, y, y, Period::Weekly), InsufficientCoverage);
  CHECK_THROWS_AS(aggregate_horizon_metrics(ts, y, Eigen::VectorXd(y.head(10)), Period::Daily), LengthMismatch);
}

TEST_CASE("weeks start on Monday and months follow the calendar") {
  // 2018-01-01 is a Monday; 9 weeks of hourly data.
  std::vector<Timestamp> ts;
  for (int h = 0; h < 9 * 168; ++h) ts.push_back(testing::kJan2018 + h * kSecondsPerHour);
  const Eigen::VectorXd y = Eigen::VectorXd::LinSpaced(9 * 168, 1.0, 2.0);
  CHECK(aggregate_horizon_metrics(ts, y, y, Period::Weekly).count == 9);
  // 1512 hours cover January (744 h) and February (672 h) but not March.
  CHECK(aggregate_horizon_metrics(ts, y, y, Period::Monthly).count == 2);
}

TEST_CASE("period names round-trip") {
  for (Period p : {Period::Hourly, Period::Daily, Period::Weekly, Period::Monthly, Period::Biannual})
    CHECK(parse_period(period_name(p)) == p);
  CHECK_THROWS_AS(parse_period("fortnightly"), ConfigError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "helios/components.hpp"
#include "helios/error.hpp"

using namespace helios;
using namespace helios::components;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd r(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) r[i++] = x;
  return r;
}

}  // namespace

TEST_CASE("setpoint is the gate-weighted mean of the context setpoints") {
  SetpointModel m;
  m.gate = gates::TimeGatingNetwork(2, features::FourierConfig{3});
  m.zeta.resize(2, 2);
  m.zeta << 16.0, 17.0, 20.0, 21.0;
  CHECK(setpoint_predict(m, 8, DayType::Weekday) == doctest::Approx(18.0));
  CHECK(setpoint_predict(m, 8, DayType::WeekendHoliday) == doctest::Approx(19.0));
  m.gate.weights[0](1, 1) = 50.0;  // comfort dominates around midnight
  CHECK(setpoint_predict(m, 0, DayType::Weekday) == doctest::Approx(20.0));
}

TEST_CASE("active fraction multiplies the season and time mixtures") {
  ActiveHouseholdsModel m;
  m.eta = vec({0.0, 1.0});
  m.mu.resize(2, 2);
  m.mu << 0.2, 0.2, 0.8, 0.8;
  m.season_gate = gates::SeasonGatingNetwork(2);
  m.time_gate = gates::TimeGatingNetwork(2, features::FourierConfig{3});
  CHECK(active_fraction(m, 5.0, 3, DayType::Weekday) == doctest::Approx(0.5 * 0.5));
  m.season_gate.params << 0.0, 10.0, 0.0, -10.0;  // hot for positive seasons
  CHECK(active_fraction(m, 5.0, 3, DayType::Weekday) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(active_fraction(m, -5.0, 3, DayType::Weekday) == doctest::Approx(0.5));
}

TEST_CASE("space heating ARX by hand") {
  SpaceHeatingARX m;
  m.a = vec({0.5, 0.1});
  m.b = {vec({1.0, 0.5}), vec({0.2}), vec({0.1, 0.1})};
  m.beta = {2.0, -1.0, 3.0};
  const std::vector<double> past{10.0, 20.0};  // Q(k-2), Q(k-1)
  const std::vector<double> gap{8.0, 10.0};
  const std::vector<double> rad{100.0};
  const std::vector<double> wind{2.0, 4.0};
  const SpaceHeatingInputs in{past, gap, rad, wind, 0.5};
  const double ar = 0.5 * 20.0 + 0.1 * 10.0;
  const double drive = 2.0 * (1.0 * 10.0 + 0.5 * 8.0) - 1.0 * 0.2 * 100.0 + 3.0 * (0.1 * 4.0 * 10.0 + 0.1 * 2.0 * 8.0);
  CHECK(space_heating_raw(m, in) == doctest::Approx(ar + 0.5 * drive));
  CHECK(m.max_lag() == 2);

  const SpaceHeatingInputs cold{past, gap, rad, wind, 0.0};
  SpaceHeatingARX neg = m;
  neg.a = vec({-1.0, 0.0});
  CHECK(space_heating_raw(neg, cold) == doctest::Approx(-20.0));
  CHECK(space_heating_predict(neg, cold) == 0.0);

  const std::vector<double> short_past{20.0};
  CHECK_THROWS_AS(space_heating_raw(m, {short_past, gap, rad, wind, 0.5}), InsufficientLags);
}

TEST_CASE("an AR(1) loss model decays geometrically") {
  PipingLossModel m;
  m.a = vec({0.5});
  m.b = vec({1.0});
  m.beta = 0.0;
  std::vector<double> history{8.0};
  const std::vector<double> gap{30.0};
  std::vector<double> out;
  for (int s = 0; s < 3; ++s) {
    out.push_back(piping_loss_predict(m, history, gap));
    history.push_back(out.back());
  }
  CHECK(out == std::vector<double>{4.0, 2.0, 1.0});

  m.beta = 0.4;
  CHECK(piping_loss_raw(m, std::vector<double>{8.0}, gap) == doctest::Approx(4.0 + 12.0));
  m.beta = -1.0;
  CHECK(piping_loss_predict(m, std::vector<double>{8.0}, gap) == 0.0);
  CHECK_THROWS_AS(piping_loss_raw(m, std::vector<double>{}, gap), InsufficientLags);
}

TEST_CASE("hot water demand follows activities and a yearly correction") {
  HotWaterModel m;
  m.q = vec({4.0, 30.0, 10.0, 25.0});
  m.gate = gates::TimeGatingNetwork(4, features::FourierConfig{3});
  m.lambda = 0.2;
  m.peak_day = 15.0;
  CHECK(user_demand(m, 10, DayType::Weekday) == doctest::Approx(17.25));
  CHECK(hot_water_correction(m, 15) == doctest::Approx(1.2));
  CHECK(hot_water_correction(m, 15 + 365 / 2) == doctest::Approx(1.0 + 0.2 * std::cos(std::numbers::pi * 182 / 182.5)));
  CHECK(hot_water_predict(m, 10, DayType::Weekday, 15) == doctest::Approx(17.25 * 1.2));
}

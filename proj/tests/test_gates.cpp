#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "helios/error.hpp"
#include "helios/gates.hpp"

using namespace helios;
using namespace helios::gates;

TEST_CASE("stable log-softmax matches the naive formula and survives large logits") {
  Eigen::VectorXd z(3);
  z << 1.0, 2.0, 3.0;
  const double norm = std::exp(1.0) + std::exp(2.0) + std::exp(3.0);
  const Eigen::VectorXd l = log_softmax_stable(z);
  for (int i = 0; i < 3; ++i) CHECK(l[i] == doctest::Approx(z[i] - std::log(norm)));

  Eigen::VectorXd big(2);
  big << 1000.0, 1000.0;
  const Eigen::VectorXd p = softmax(big);
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p.allFinite());

  Eigen::VectorXd bad(2);
  bad << 1.0, std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(log_softmax_stable(bad), NonFiniteInput);
}

TEST_CASE("zero weights give uniform gates") {
  const TimeGatingNetwork net(4, features::FourierConfig{3});
  const Eigen::VectorXd p = time_gate_probs(net, 7, DayType::Weekday);
  for (int c = 0; c < 4; ++c) CHECK(p[c] == doctest::Approx(0.25));
}

TEST_CASE("time gates use one weight matrix per day type") {
  TimeGatingNetwork net(2, features::FourierConfig{1});
  net.weights[1](0, 1) = 5.0;  // weekends favour context 0 near midnight
  const Eigen::VectorXd weekday = time_gate_probs(net, 0, DayType::Weekday);
  const Eigen::VectorXd weekend = time_gate_probs(net, 0, DayType::WeekendHoliday);
  CHECK(weekday[0] == doctest::Approx(0.5));
  CHECK(weekend[0] == doctest::Approx(1.0 / (1.0 + std::exp(-5.0))));
}

TEST_CASE("season gates are logistic in the season index") {
  SeasonGatingNetwork net(2);
  net.params << 0.0, 1.0, 0.0, -1.0;
  const Eigen::VectorXd p = season_gate_probs(net, 2.0);
  CHECK(p[0] == doctest::Approx(1.0 / (1.0 + std::exp(-4.0))));
  CHECK(p.sum() == doctest::Approx(1.0));
}

TEST_CASE("random gates stay on the simplex") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 10.0);
  TimeGatingNetwork net(5, features::FourierConfig{3});
  for (auto& w : net.weights) w = w.unaryExpr([&](double) { return n(rng); });
  for (int h = 0; h < 24; ++h)
    for (DayType d : {DayType::Weekday, DayType::WeekendHoliday}) {
      const Eigen::VectorXd p = time_gate_probs(net, h, d);
      CHECK((p.array() >= 0.0).all());
      CHECK(std::abs(p.sum() - 1.0) < 1e-12);
    }
}

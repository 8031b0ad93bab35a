#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helios/error.hpp"
#include "helios/synthetic.hpp"

using namespace helios;
using namespace helios::evaluation;

namespace {

double mean_over_days(const Eigen::VectorXd& v, int first_day, int last_day) {
  return v.segment(first_day * 24, (last_day - first_day) * 24).mean();
}

}  // namespace

TEST_CASE("the load is the sum of the labelled components and the noise") {
  SynthConfig cfg;
  cfg.seed = 3;
  const SyntheticData syn = generate_synthetic(cfg);
  REQUIRE(syn.data.size() == 8760);
  CHECK(syn.data.contiguous());
  const Eigen::VectorXd q = syn.data.heat_load();
  const Eigen::VectorXd parts = syn.space + syn.hot_water + syn.loss + syn.noise;
  CHECK((q - parts).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(q.minCoeff() >= 0.0);
  CHECK(syn.space.minCoeff() >= 0.0);
  CHECK(syn.hot_water.minCoeff() >= 0.0);
  CHECK(syn.loss.minCoeff() >= 0.0);
}

TEST_CASE("winter needs more space heating than summer") {
  SynthConfig cfg;
  cfg.seed = 5;
  const SyntheticData syn = generate_synthetic(cfg);
  const double january = mean_over_days(syn.space, 0, 31);
  const double july = mean_over_days(syn.space, 181, 212);
  CHECK(january > 10.0 * std::max(july, 1.0));
  CHECK(mean_over_days(syn.loss, 0, 31) > mean_over_days(syn.loss, 181, 212));
}

TEST_CASE("zero activity leaves only piping losses") {
  SynthConfig cfg;
  cfg.activity = 0.0;
  const SyntheticData syn = generate_synthetic(cfg);
  CHECK(syn.space.cwiseAbs().maxCoeff() == 0.0);
  CHECK(syn.hot_water.cwiseAbs().maxCoeff() == 0.0);
  CHECK(syn.loss.mean() > 0.0);
}

TEST_CASE("generation is deterministic per seed and extends with more years") {
  SynthConfig cfg;
  cfg.seed = 9;
  const SyntheticData a = generate_synthetic(cfg);
  const SyntheticData b = generate_synthetic(cfg);
  CHECK(a.data.heat_load() == b.data.heat_load());
  cfg.seed = 10;
  CHECK_FALSE(generate_synthetic(cfg).data.heat_load() == a.data.heat_load());
  cfg.seed = 9;
  cfg.years = 2;
  const SyntheticData two = generate_synthetic(cfg);
  CHECK(two.data.size() == 2 * 8760);
  CHECK(Eigen::VectorXd(two.data.heat_load().head(8760)) == a.data.heat_load());
}

TEST_CASE("invalid settings name the field") {
  SynthConfig cfg;
  cfg.years = 0;
  try {
    cfg.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("years") != std::string::npos);
  }
  cfg = SynthConfig{};
  cfg.control_gain = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helios/error.hpp"
#include "helios/fit.hpp"
#include "helios/synthetic.hpp"

using namespace helios;

namespace {

ModelConfig small_config() {
  ModelConfig cfg;
  cfg.season_window = 24 * 7;
  return cfg;
}

const Dataset& winter_data() {
  static const Dataset ds = [] {
    evaluation::SynthConfig cfg;
    cfg.seed = 2;
    return evaluation::generate_synthetic(cfg).data.slice(0, 24 * 40);
  }();
  return ds;
}

FitConfig quick(int outer) {
  FitConfig cfg;
  cfg.max_outer_iterations = outer;
  cfg.inner_max_iterations = 40;
  cfg.seed = 4;
  return cfg;
}

}  // namespace

TEST_CASE("zero outer iterations return the initial model") {
  const auto sets = contexts::default_context_sets();
  const PriorSpec priors = default_priors(sets);
  const FitResult r = fit(winter_data(), sets, priors, quick(0), small_config());
  CHECK(r.report.objective.empty());
  CHECK_FALSE(r.report.converged);
  CHECK(std::isfinite(r.report.initial_objective));
  const HeliosModel init = initial_model(small_config(), sets, priors, 4);
  const ParameterLayout layout = init.layout();
  CHECK(layout.pack(r.model.params) == layout.pack(init.params));
}

TEST_CASE("the objective trace never decreases") {
  const auto sets = contexts::default_context_sets();
  const FitResult r = fit(winter_data(), sets, default_priors(sets), quick(6), small_config());
  REQUIRE_FALSE(r.report.objective.empty());
  CHECK(r.report.objective.front() >= r.report.initial_objective);
  for (std::size_t i = 1; i < r.report.objective.size(); ++i)
    CHECK(r.report.objective[i] >= r.report.objective[i - 1]);
  CHECK(r.report.max_delta.size() == r.report.objective.size());
  CHECK(r.report.inner_iterations > 0);
}

TEST_CASE("fits are deterministic for a seed") {
  const auto sets = contexts::default_context_sets();
  const FitResult a = fit(winter_data(), sets, default_priors(sets), quick(2), small_config());
  const FitResult b = fit(winter_data(), sets, default_priors(sets), quick(2), small_config());
  CHECK(a.report.objective == b.report.objective);
  const ParameterLayout layout = a.model.layout();
  CHECK(layout.pack(a.model.params) == layout.pack(b.model.params));
}

TEST_CASE("initial models jitter the prior means slightly") {
  const auto sets = contexts::default_context_sets();
  const PriorSpec priors = default_priors(sets);
  const HeliosModel base = make_model(small_config(), sets, priors);
  const HeliosModel a = initial_model(small_config(), sets, priors, 1);
  const HeliosModel b = initial_model(small_config(), sets, priors, 2);
  const ParameterLayout layout = base.layout();
  CHECK_FALSE(layout.pack(a.params) == layout.pack(b.params));
  CHECK(layout.pack(a.params) == layout.pack(initial_model(small_config(), sets, priors, 1).params));
  CHECK(std::abs(a.params.hot_water.lambda - base.params.hot_water.lambda) <= 0.01 * priors.lambda.scale + 1e-12);
}

TEST_CASE("fit input errors") {
  const auto sets = contexts::default_context_sets();
  const PriorSpec priors = default_priors(sets);
  CHECK_THROWS_AS(fit(winter_data().slice(0, 100), sets, priors, quick(1), small_config()), DegenerateData);

  std::vector<Row> rows(winter_data().rows().begin(), winter_data().rows().end());
  for (Row& r : rows) r.substation.heat_load = 50.0;
  CHECK_THROWS_AS(fit(Dataset(rows), sets, priors, quick(1), small_config()), DegenerateData);

  std::vector<Row> gappy(rows.begin(), rows.begin() + 300);
  gappy.erase(gappy.begin() + 250);
  CHECK_THROWS_AS(fit(Dataset(gappy), sets, priors, quick(1), small_config()), DatasetHasGaps);

  FitConfig bad = quick(1);
  bad.outer_tolerance = 0.0;
  CHECK_THROWS_AS(fit(winter_data(), sets, priors, bad, small_config()), ConfigError);
}

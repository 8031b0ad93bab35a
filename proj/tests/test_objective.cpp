#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helios/components.hpp"
#include "helios/error.hpp"
#include "helios/features.hpp"
#include "helios/objective.hpp"
#include "helios/predict.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace helios;
using namespace helios::testing;

TEST_CASE("objective matches direct enumeration over context combinations") {
  const ModelConfig cfg = small_config();
  const auto sets = contexts::default_context_sets();
  const Dataset ds = testing::random_dataset(static_cast<std::size_t>(cfg.warmup_rows()) + 4, 7);
  for (unsigned seed : {1u, 2u, 3u}) {
    const HeliosModel m = random_model(cfg, sets, seed);
    const PreparedData data = prepare(cfg, ds);
    const ContextWeights w = context_weights(sets, data);
    const double expected = brute_force_objective(m, ds, w);
    const double got = weighted_log_posterior(m, ds, m.priors, w);
    CHECK(got == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("all weights one and flat priors give the marginal likelihood") {
  const ModelConfig cfg = small_config();
  const auto sets = contexts::default_context_sets();
  const Dataset ds = testing::random_dataset(static_cast<std::size_t>(cfg.warmup_rows()) + 4, 11);
  HeliosModel m = random_model(cfg, sets, 5);
  PriorSpec flat = m.priors;
  auto widen = [](Prior& p) { p.scale = 1e6; };
  widen(flat.gate);
  for (auto& p : flat.setpoint) widen(p);
  for (auto& p : flat.season_activity) widen(p);
  for (auto& p : flat.time_activity) widen(p);
  widen(flat.gain);
  widen(flat.arx);
  widen(flat.lambda);
  widen(flat.demand);
  widen(flat.noise);
  m.priors = flat;

  const PreparedData data = prepare(cfg, ds);
  ContextWeights ones = context_weights(sets, data);
  ones.setpoint.setOnes();
  ones.season.setOnes();
  ones.hot_water.setOnes();
  const double marginal = brute_force_objective(m, ds, ones, false);
  CHECK(std::abs(weighted_log_posterior(m, ds, flat, ones) - marginal) < 1e-6);
}

TEST_CASE("identical experts reduce to a plain Gaussian regression") {
  const ModelConfig cfg = small_config();
  const auto sets = contexts::default_context_sets();
  const Dataset ds = testing::random_dataset(static_cast<std::size_t>(cfg.warmup_rows()) + 4, 13);
  HeliosModel m = random_model(cfg, sets, 9);
  // Every context carries the same expert values, so gate probabilities sum
  // out and each mixture is a single Gaussian term.
  auto& p = m.params;
  p.setpoint.zeta.setConstant(19.0);
  p.active.eta.setConstant(0.7);
  p.active.mu.setConstant(0.6);
  p.hot_water.q.setConstant(12.0);

  const PreparedData data = prepare(cfg, ds);
  ContextWeights ones = context_weights(sets, data);
  ones.setpoint.setOnes();
  ones.season.setOnes();
  ones.hot_water.setOnes();

  const ComponentTargets t = residual_targets(m, ds);
  const Decomposition pred = predict_decomposed(m, ds, PredictionMode::TeacherForced);
  // Unclamped predictions: recompute from the pass directly.
  const StaticTerms terms = static_terms(p, data);
  const TeacherForcedPass pass = teacher_forced_pass(p, data, terms);
  const double s = p.noise_scale;
  auto log_n = [&](double y, double mu) {
    return -0.5 * std::log(2.0 * std::numbers::pi) - std::log(s) - 0.5 * (y - mu) * (y - mu) / (s * s);
  };
  double expected = 0.0;
  for (Eigen::Index k = data.first_row; k < data.rows(); ++k) {
    const double total = pass.space[k] + pass.hot_water[k] + pass.loss[k];
    expected += log_n(data.load[k], total) + log_n(t.loss[k], pass.loss[k]) + log_n(t.space[k], pass.space[k]) +
                log_n(t.hot_water[k], pass.hot_water[k]);
  }
  const ParameterLayout layout = m.layout();
  expected += layout.log_prior(layout.pack(p));
  CHECK(pred.size() == 4);
  CHECK(weighted_log_posterior(m, ds, m.priors, ones) == doctest::Approx(expected).epsilon(1e-10));
}

int gradient_mismatches(bool follow) {
  const ModelConfig cfg = small_config();
  const Dataset ds = testing::random_dataset(static_cast<std::size_t>(cfg.warmup_rows()) + 50, 17);
  const testing::GradientCheck r = testing::check_gradient(cfg, contexts::default_context_sets(), ds, follow, 20, 100);
  if (r.mismatches > 0) MESSAGE(r.first_mismatch);
  return r.mismatches;
}

TEST_CASE("analytic gradient matches central finite differences") { CHECK(gradient_mismatches(false) == 0); }

TEST_CASE("gradient through parameter-dependent targets matches finite differences") {
  CHECK(gradient_mismatches(true) == 0);
}

TEST_CASE("a parameter without influence only feels its prior") {
  const ModelConfig cfg = small_config();
  const auto sets = contexts::default_context_sets();
  Dataset ds = testing::random_dataset(static_cast<std::size_t>(cfg.warmup_rows()) + 30, 19);
  std::vector<Row> rows(ds.rows().begin(), ds.rows().end());
  for (auto& r : rows) r.weather.global_radiance = 0.0;
  ds = Dataset(rows);
  const HeliosModel m = random_model(cfg, sets, 23);
  const WeightedObjective obj = make_objective(m, ds);
  const ParameterLayout& layout = obj.layout();
  const Eigen::VectorXd c = layout.pack(m.params);
  const Eigen::VectorXd u = layout.to_unconstrained(c);
  Eigen::VectorXd g;
  obj.value_and_gradient(u, g);
  const Eigen::VectorXd prior_only = layout.log_prior_gradient(c).cwiseProduct(layout.jacobian_diagonal(u));
  for (std::size_t i = 0; i < layout.slots().size(); ++i)
    if (layout.slots()[i].name == "space.beta2") {
      const auto idx = static_cast<Eigen::Index>(i);
      CHECK(g[idx] == doctest::Approx(prior_only[idx]).epsilon(1e-12));
    }
}

TEST_CASE("misaligned weights are rejected") {
  const ModelConfig cfg = small_config();
  const auto sets = contexts::default_context_sets();
  const Dataset ds = testing::random_dataset(static_cast<std::size_t>(cfg.warmup_rows()) + 4, 29);
  const HeliosModel m = make_model(cfg, sets, default_priors(sets));
  PreparedData data = prepare(cfg, ds);
  ContextWeights w = context_weights(sets, data);
  w.season.conservativeResize(w.season.rows() - 1, Eigen::NoChange);
  CHECK_THROWS_AS(weighted_log_posterior(m, ds, m.priors, w), AlignmentMismatch);
}

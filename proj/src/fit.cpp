#include "helios/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "helios/error.hpp"
#include "helios/objective.hpp"
#include "helios/optimizer.hpp"
#include "helios/predict.hpp"
#include "helios/problem.hpp"

namespace helios {

void FitConfig::validate() const {
  if (max_outer_iterations < 0) throw ConfigError("max_outer_iterations must be >= 0");
  if (!(outer_tolerance > 0.0)) throw ConfigError("outer_tolerance must be > 0");
  if (inner_max_iterations < 1) throw ConfigError("inner_max_iterations must be >= 1");
}

HeliosModel initial_model(const ModelConfig& cfg, const contexts::ContextSets& sets, const PriorSpec& priors,
                          std::uint64_t seed) {
  HeliosModel m = make_model(cfg, sets, priors);
  const ParameterLayout layout = m.layout();
  Eigen::VectorXd c = layout.pack(m.params);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.01, 0.01);
  for (std::size_t i = 0; i < layout.slots().size(); ++i) {
    const ParameterSlot& slot = layout.slots()[i];
    double& v = c[static_cast<Eigen::Index>(i)];
    v += jitter(rng) * slot.prior.scale;
    if (slot.transform == Transform::Logistic) v = std::clamp(v, 0.01, 0.99);
    if (slot.transform == Transform::Softplus) v = std::max(v, 1e-6);
  }
  layout.unpack(c, m.params);
  for (auto& b : m.params.space.b) b *= kInitialInputScale;
  m.params.loss.b *= kInitialInputScale;
  return m;
}

namespace {

double relative_change(const Eigen::VectorXd& before, const Eigen::VectorXd& after) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < before.size(); ++i)
    worst = std::max(worst, std::abs(after[i] - before[i]) / std::max(1.0, std::abs(before[i])));
  return worst;
}

}  // namespace

FitResult fit(const Dataset& ds, const contexts::ContextSets& sets, const PriorSpec& priors, const FitConfig& cfg,
              const ModelConfig& model_cfg) {
  return fit(ds, sets, priors, cfg, model_cfg, initial_model(model_cfg, sets, priors, cfg.seed));
}

FitResult fit(const Dataset& ds, const contexts::ContextSets& sets, const PriorSpec& priors, const FitConfig& cfg,
              const ModelConfig& model_cfg, const HeliosModel& start) {
  cfg.validate();
  model_cfg.validate();
  sets.setpoint.validate();
  sets.season.validate();
  sets.hot_water.validate();
  priors.validate(sets);
  ds.require_contiguous("fit");
  if (ds.size() <= static_cast<std::size_t>(model_cfg.warmup_rows()))
    throw DegenerateData("fit needs more than " + std::to_string(model_cfg.warmup_rows()) + " rows, got " +
                         std::to_string(ds.size()));

  FitResult out;
  out.model = make_model(model_cfg, sets, priors);
  {
    const ParameterLayout from = start.layout();
    const ParameterLayout to = out.model.layout();
    if (start.contexts != sets || from.size() != to.size())
      throw ConfigError("fit: the starting model does not match the contexts and model structure");
    to.unpack(from.pack(start.params), out.model.params);
  }
  const PreparedData data = prepare(model_cfg, ds);
  {
    const auto rows = data.load.tail(data.rows() - data.first_row);
    if (rows.maxCoeff() - rows.minCoeff() <= 0.0) throw DegenerateData("heat load is constant over the fit window");
  }
  const ContextWeights weights = context_weights(sets, data);
  const ParameterLayout layout = out.model.layout();
  out.report.dropped_warmup = static_cast<int>(data.first_row);

  // The objective with targets recomputed at each evaluation point and
  // differentiated through; it defines the trace and the acceptance test.
  const WeightedObjective follow(out.model, data, weights);
  auto full_objective = [&](const Eigen::VectorXd& u) {
    try {
      return follow.value(u);
    } catch (const NonFiniteObjective&) {
      return -std::numeric_limits<double>::infinity();
    }
  };

  Eigen::VectorXd theta = layout.pack(out.model.params);
  double current = full_objective(layout.to_unconstrained(theta));
  out.report.initial_objective = current;

  LbfgsOptions inner;
  inner.max_iterations = cfg.inner_max_iterations;

  for (int outer = 0; outer < cfg.max_outer_iterations; ++outer) {
    const Eigen::VectorXd u0 = layout.to_unconstrained(theta);

    // First the alternating step: targets from the current parameters, held
    // fixed while the weighted posterior is maximised. A step that lowers the
    // objective is pulled back toward theta; if that fails too, the step is
    // taken on the target-following objective, which cannot decrease.
    const WeightedObjective fixed(out.model, data, weights, residual_targets(out.model.params, data));
    const LbfgsResult r = maximize_lbfgs(
        [&](const Eigen::VectorXd& u, Eigen::VectorXd& g) { return fixed.value_and_gradient(u, g); }, u0, inner);
    out.report.inner_iterations += r.iterations;

    Eigen::VectorXd candidate_u = r.x;
    double value = current;
    bool accepted = false;
    for (int shrink = 0; shrink < 12 && !accepted; ++shrink) {
      value = full_objective(candidate_u);
      if (value >= current)
        accepted = true;
      else
        candidate_u = u0 + 0.5 * (candidate_u - u0);
    }
    if (!accepted) {
      const LbfgsResult f = maximize_lbfgs(
          [&](const Eigen::VectorXd& u, Eigen::VectorXd& g) { return follow.value_and_gradient(u, g); }, u0, inner);
      out.report.inner_iterations += f.iterations;
      candidate_u = f.x;
      value = full_objective(candidate_u);
      accepted = value >= current;
    }
    Parameters candidate = out.model.params;
    layout.unpack(layout.to_constrained(candidate_u), candidate);
    if (!accepted) {
      out.report.stalled = true;
      break;
    }
    const Eigen::VectorXd next = layout.pack(candidate);
    const double delta = relative_change(theta, next);
    out.model.params = candidate;
    theta = next;
    current = value;
    out.report.objective.push_back(value);
    out.report.max_delta.push_back(delta);
    if (delta < cfg.outer_tolerance) {
      out.report.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace helios

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "helios/baselines.hpp"
#include "helios/contexts.hpp"
#include "helios/data.hpp"
#include "helios/metrics.hpp"
#include "helios/model.hpp"
#include "helios/predict.hpp"

namespace helios::evaluation {

enum class ContextVariant { Expert, NC, WC };

std::string variant_name(ContextVariant v);
/// Accepts "expert", "nc", "wc". Throws ConfigError otherwise.
ContextVariant parse_variant(const std::string& name);

/// NC: every certainty set to 0, so all weights are 1. WC: each set's
/// supports are handed to a different context (seeded cyclic shift) and every
/// hour interval is moved by a seeded 3 to 9 hour offset; certainties are kept.
/// Expert: `base` unchanged.
contexts::ContextSets make_context_variants(const contexts::ContextSets& base, ContextVariant variant,
                                            std::uint64_t seed);

/// Pooled rolling-origin forecasts over a test set.
struct RollingPredictions {
  std::string model;
  std::vector<Timestamp> timestamps;
  Eigen::VectorXd actual;
  Eigen::VectorXd predicted;
  std::optional<Decomposition> components;
};

/// Origins at the first test row and every `stride` rows after it; each
/// forecasts min(horizon, rows left) steps with known exogenous inputs.
/// `train` must end one hour before `test` starts.
RollingPredictions rolling_forecast(const std::string& name, const HeliosModel& m, const Dataset& train,
                                    const Dataset& test, int horizon, int stride);
RollingPredictions rolling_forecast(const std::string& name, const BaselineModel& m, const Dataset& train,
                                    const Dataset& test, int horizon, int stride);

struct BenchmarkRow {
  std::string model;
  MetricsReport metrics;
};

/// One row per prediction set, in input order.
std::vector<BenchmarkRow> benchmark(const std::vector<RollingPredictions>& runs, int horizon,
                                    Period period = Period::Hourly);

/// Header: model,period,horizon,R2,RMSE,MAE,MAPE,count,mape_skipped
void write_results_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows);
/// Header: model,timestamp,actual,predicted,Q_space,Q_hot_water,Q_loss. Component
/// columns are empty for models without a decomposition.
void write_predictions_csv(std::ostream& out, const std::vector<RollingPredictions>& runs);

}  // namespace helios::evaluation

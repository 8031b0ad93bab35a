#include "helios/benchmark.hpp"

#include <algorithm>
#include <ostream>
#include <random>

#include "helios/csv.hpp"
#include "helios/error.hpp"
#include "helios/problem.hpp"

namespace helios::evaluation {

std::string variant_name(ContextVariant v) {
  switch (v) {
    case ContextVariant::Expert: return "expert";
    case ContextVariant::NC: return "nc";
    case ContextVariant::WC: return "wc";
  }
  return "expert";
}

ContextVariant parse_variant(const std::string& name) {
  for (ContextVariant v : {ContextVariant::Expert, ContextVariant::NC, ContextVariant::WC})
    if (variant_name(v) == name) return v;
  throw ConfigError("unknown variant '" + name + "' (expert, nc, wc)");
}

namespace {

void scramble(contexts::ContextSet& set, std::mt19937_64& rng) {
  const std::size_t n = set.size();
  std::uniform_int_distribution<std::size_t> pick(1, n - 1);
  std::uniform_int_distribution<int> offset(3, 9);
  const std::size_t rotate = pick(rng);
  std::vector<contexts::PossibilityContext> moved = set.contexts;
  for (std::size_t c = 0; c < n; ++c) {
    const auto& from = set.contexts[(c + rotate) % n];
    moved[c].hours = from.hours;
    moved[c].season = from.season;
  }
  for (auto& ctx : moved) {
    const int shift = offset(rng);
    for (auto& iv : ctx.hours) {
      // Full-day intervals stay full-day.
      if (iv.end - iv.start >= 24) continue;
      iv.start = (iv.start + shift) % 24;
      iv.end = (iv.end + shift) % 24;
      if (iv.end == 0) iv.end = 24;
    }
  }
  set.contexts = std::move(moved);
}

}  // namespace

contexts::ContextSets make_context_variants(const contexts::ContextSets& base, ContextVariant variant,
                                            std::uint64_t seed) {
  contexts::ContextSets out = base;
  switch (variant) {
    case ContextVariant::Expert: break;
    case ContextVariant::NC:
      for (auto* set : {&out.setpoint, &out.season, &out.hot_water})
        for (auto& ctx : set->contexts) ctx.certainty = 0.0;
      break;
    case ContextVariant::WC: {
      std::mt19937_64 rng(seed);
      scramble(out.setpoint, rng);
      scramble(out.season, rng);
      scramble(out.hot_water, rng);
      break;
    }
  }
  return out;
}

namespace {

void check_adjacent(const Dataset& train, const Dataset& test, int horizon, int stride) {
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  if (stride < 1) throw ConfigError("stride must be >= 1");
  if (train.empty() || test.empty()) throw InsufficientHistory("rolling forecast needs train and test rows");
  if (test[0].calendar.timestamp != train[train.size() - 1].calendar.timestamp + kSecondsPerHour)
    throw MissingExogenous("test set must start one hour after the training set");
}

template <typename StepFn>
RollingPredictions roll(const std::string& name, const Dataset& full, std::size_t first, int horizon, int stride,
                        StepFn&& step) {
  RollingPredictions out;
  out.model = name;
  std::vector<double> actual, predicted;
  for (std::size_t origin = first; origin < full.size(); origin += static_cast<std::size_t>(stride)) {
    const int h = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(horizon), full.size() - origin));
    const Eigen::VectorXd yhat = step(static_cast<Eigen::Index>(origin), h);
    for (int s = 0; s < h; ++s) {
      const Row& r = full[origin + static_cast<std::size_t>(s)];
      out.timestamps.push_back(r.calendar.timestamp);
      actual.push_back(r.substation.heat_load);
      predicted.push_back(yhat[s]);
    }
  }
  out.actual = Eigen::Map<Eigen::VectorXd>(actual.data(), static_cast<Eigen::Index>(actual.size()));
  out.predicted = Eigen::Map<Eigen::VectorXd>(predicted.data(), static_cast<Eigen::Index>(predicted.size()));
  return out;
}

}  // namespace

RollingPredictions rolling_forecast(const std::string& name, const HeliosModel& m, const Dataset& train,
                                    const Dataset& test, int horizon, int stride) {
  check_adjacent(train, test, horizon, stride);
  if (train.size() < static_cast<std::size_t>(m.config.warmup_rows()))
    throw InsufficientHistory("training history is shorter than the model warm-up");
  const Dataset full = train.concat(test);
  const PreparedData data = prepare(m.config, full);
  const StaticTerms terms = static_terms(m.params, data);
  const TeacherForcedPass pass = teacher_forced_pass(m.params, data, terms);
  Decomposition parts;
  parts.resize(0);
  RollingPredictions out = roll(name, full, train.size(), horizon, stride, [&](Eigen::Index origin, int h) {
    const Decomposition d = forecast_from(m.params, data, terms, pass.targets, origin, h);
    parts.append(d);
    return d.total;
  });
  out.components = std::move(parts);
  return out;
}

RollingPredictions rolling_forecast(const std::string& name, const BaselineModel& m, const Dataset& train,
                                    const Dataset& test, int horizon, int stride) {
  check_adjacent(train, test, horizon, stride);
  const Dataset full = train.concat(test);
  const Eigen::MatrixXd X = baseline_features(full, m.harmonics);
  const Eigen::VectorXd y = full.heat_load();
  return roll(name, full, train.size(), horizon, stride,
              [&](Eigen::Index origin, int h) { return forecast_baseline(m, X, y, origin, h); });
}

std::vector<BenchmarkRow> benchmark(const std::vector<RollingPredictions>& runs, int horizon, Period period) {
  std::vector<BenchmarkRow> rows;
  for (const auto& run : runs) {
    BenchmarkRow row{run.model, aggregate_horizon_metrics(run.timestamps, run.actual, run.predicted, period)};
    row.metrics.horizon = horizon;
    rows.push_back(row);
  }
  return rows;
}

void write_results_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows) {
  csv::write_row(out, {"model", "period", "horizon", "R2", "RMSE", "MAE", "MAPE", "count", "mape_skipped"});
  for (const auto& r : rows) {
    const auto& m = r.metrics;
    csv::write_row(out, {r.model, period_name(m.period), std::to_string(m.horizon), csv::format_double(m.r2),
                         csv::format_double(m.rmse), csv::format_double(m.mae), csv::format_double(m.mape),
                         std::to_string(m.count), std::to_string(m.mape_skipped)});
  }
}

void write_predictions_csv(std::ostream& out, const std::vector<RollingPredictions>& runs) {
  csv::write_row(out, {"model", "timestamp", "actual", "predicted", "Q_space", "Q_hot_water", "Q_loss"});
  for (const auto& run : runs)
    for (std::size_t i = 0; i < run.timestamps.size(); ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      std::vector<std::string> row{run.model, format_timestamp(run.timestamps[i]), csv::format_double(run.actual[k]),
                                   csv::format_double(run.predicted[k])};
      if (run.components) {
        row.push_back(csv::format_double(run.components->space[k]));
        row.push_back(csv::format_double(run.components->hot_water[k]));
        row.push_back(csv::format_double(run.components->loss[k]));
      } else {
        row.insert(row.end(), {"", "", ""});
      }
      csv::write_row(out, row);
    }
}

}  // namespace helios::evaluation

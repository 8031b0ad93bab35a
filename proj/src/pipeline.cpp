#include "helios/pipeline.hpp"

#include <ostream>

#include "helios/baselines.hpp"
#include "helios/csv.hpp"
#include "helios/features.hpp"

namespace helios {

FitResult train_model(const RunConfig& cfg, const Dataset& train, evaluation::ContextVariant variant) {
  ModelConfig model = cfg.model;
  if (cfg.estimate_ground) model.ground = features::estimate_ground_config(train, model.ground);
  const contexts::ContextSets sets = evaluation::make_context_variants(cfg.contexts, variant, cfg.benchmark.scramble_seed);
  FitConfig fit_cfg = cfg.fit;
  fit_cfg.seed = cfg.seed;
  return fit(train, sets, cfg.priors, fit_cfg, model);
}

std::string model_label(evaluation::ContextVariant variant) {
  switch (variant) {
    case evaluation::ContextVariant::Expert: return "HELIOS";
    case evaluation::ContextVariant::NC: return "HELIOS-NC";
    case evaluation::ContextVariant::WC: return "HELIOS-WC";
  }
  return "HELIOS";
}

EvaluationRun run_evaluation(const RunConfig& cfg, const Dataset& train, const Dataset& test) {
  using namespace evaluation;
  EvaluationRun out;
  const int horizon = cfg.benchmark.horizon;
  const int stride = cfg.benchmark.stride;
  for (ContextVariant v : {ContextVariant::Expert, ContextVariant::NC, ContextVariant::WC}) {
    FitResult r = train_model(cfg, train, v);
    out.runs.push_back(rolling_forecast(model_label(v), r.model, train, test, horizon, stride));
    out.reports.push_back(std::move(r.report));
    out.models.push_back(std::move(r.model));
  }
  for (BaselineKind k : {BaselineKind::LR, BaselineKind::Ridge, BaselineKind::LASSO, BaselineKind::ARX}) {
    const BaselineModel m = fit_baseline(default_baseline(k), train);
    out.runs.push_back(rolling_forecast(baseline_name(k), m, train, test, horizon, stride));
  }
  return out;
}

void write_labels_csv(std::ostream& out, const evaluation::SyntheticData& syn) {
  csv::write_row(out, {"timestamp", "Q_space", "Q_hot_water", "Q_loss", "noise"});
  for (std::size_t i = 0; i < syn.data.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    csv::write_row(out, {format_timestamp(syn.data[i].calendar.timestamp), csv::format_double(syn.space[k]),
                         csv::format_double(syn.hot_water[k]), csv::format_double(syn.loss[k]),
                         csv::format_double(syn.noise[k])});
  }
}

void write_trace_csv(std::ostream& out, const FitReport& report) {
  csv::write_row(out, {"iteration", "objective", "max_delta"});
  csv::write_row(out, {"0", csv::format_double(report.initial_objective), ""});
  for (std::size_t i = 0; i < report.objective.size(); ++i)
    csv::write_row(out, {std::to_string(i + 1), csv::format_double(report.objective[i]),
                         csv::format_double(report.max_delta[i])});
}

void write_forecast_csv(std::ostream& out, const Decomposition& d) {
  csv::write_row(out, {"timestamp", "Q_total", "Q_space", "Q_hot_water", "Q_loss"});
  for (Eigen::Index i = 0; i < d.size(); ++i)
    csv::write_row(out, {format_timestamp(d.timestamps[static_cast<std::size_t>(i)]), csv::format_double(d.total[i]),
                         csv::format_double(d.space[i]), csv::format_double(d.hot_water[i]),
                         csv::format_double(d.loss[i])});
}

}  // namespace helios

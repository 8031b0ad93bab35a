#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "helios/benchmark.hpp"
#include "helios/config.hpp"
#include "helios/fit.hpp"
#include "helios/predict.hpp"
#include "helios/synthetic.hpp"

namespace helios {

/// Fits HELIOS with the configured contexts turned into `variant`. The ground
/// model is estimated from `train` when the config asks for it.
FitResult train_model(const RunConfig& cfg, const Dataset& train, evaluation::ContextVariant variant);

/// "HELIOS", "HELIOS-NC", "HELIOS-WC".
std::string model_label(evaluation::ContextVariant variant);

struct EvaluationRun {
  std::vector<evaluation::RollingPredictions> runs;  // HELIOS variants first, then LR, Ridge, LASSO, ARX
  std::vector<FitReport> reports;                   // one per HELIOS variant
  std::vector<HeliosModel> models;                  // one per HELIOS variant
};

/// Trains every model on `train` and forecasts `test` with rolling origins.
EvaluationRun run_evaluation(const RunConfig& cfg, const Dataset& train, const Dataset& test);

/// Header: timestamp,Q_space,Q_hot_water,Q_loss,noise
void write_labels_csv(std::ostream& out, const evaluation::SyntheticData& syn);
/// Header: iteration,objective,max_delta
void write_trace_csv(std::ostream& out, const FitReport& report);
/// Header: timestamp,Q_total,Q_space,Q_hot_water,Q_loss
void write_forecast_csv(std::ostream& out, const Decomposition& d);

}  // namespace helios

#pragma once

#include <cstdint>
#include <vector>

#include "helios/contexts.hpp"
#include "helios/data.hpp"
#include "helios/model.hpp"

namespace helios {

struct FitConfig {
  int max_outer_iterations = 50;
  double outer_tolerance = 1e-4;  // max relative parameter change
  int inner_max_iterations = 200;
  std::uint64_t seed = 0;

  /// Throws ConfigError.
  void validate() const;
};

struct FitReport {
  /// Weighted log-posterior after each accepted outer iteration, with the
  /// targets recomputed at the new parameters.
  std::vector<double> objective;
  std::vector<double> max_delta;
  double initial_objective = 0.0;
  bool converged = false;
  /// The outer scheme could not find a non-decreasing update.
  bool stalled = false;
  int inner_iterations = 0;
  int dropped_warmup = 0;
};

struct FitResult {
  HeliosModel model;
  FitReport report;
};

/// Alternates target estimation and weighted MAP maximisation until the
/// parameters settle. A non-converged run still returns the best model found.
/// Errors: DatasetHasGaps, DegenerateData (too short or constant load), ConfigError.
FitResult fit(const Dataset& ds, const contexts::ContextSets& sets, const PriorSpec& priors, const FitConfig& cfg,
              const ModelConfig& model_cfg = {});
/// Same, starting from the parameters of `start` instead of the default initialisation.
FitResult fit(const Dataset& ds, const contexts::ContextSets& sets, const PriorSpec& priors, const FitConfig& cfg,
              const ModelConfig& model_cfg, const HeliosModel& start);

/// Scale applied to the prior mean of the ARX input filter coefficients at initialisation.
inline constexpr double kInitialInputScale = 0.05;

/// Prior means with seeded jitter of up to 1% of each prior scale; the ARX
/// input filters start at kInitialInputScale times that.
HeliosModel initial_model(const ModelConfig& cfg, const contexts::ContextSets& sets, const PriorSpec& priors,
                          std::uint64_t seed);

}  // namespace helios

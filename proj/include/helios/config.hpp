#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "helios/benchmark.hpp"
#include "helios/contexts.hpp"
#include "helios/fit.hpp"
#include "helios/metrics.hpp"
#include "helios/model.hpp"
#include "helios/synthetic.hpp"

namespace helios {

inline constexpr int kRunConfigVersion = 1;

struct BenchmarkSettings {
  int horizon = 12;
  int stride = 12;
  evaluation::Period period = evaluation::Period::Hourly;
  std::uint64_t scramble_seed = 11;  // HELIOS-WC context shuffle
};

/// Everything a CLI run needs. Every field has a default, so an empty
/// document (`{"version": 1}`) is a complete configuration.
struct RunConfig {
  std::uint64_t seed = 0;
  std::string data_path;
  std::string model_path;
  std::string output_dir = ".";
  std::vector<std::string> holidays;  // ISO dates
  evaluation::ContextVariant variant = evaluation::ContextVariant::Expert;
  contexts::ContextSets contexts = contexts::default_context_sets();
  PriorSpec priors = default_priors();
  ModelConfig model;
  /// Replace model.ground with the estimate from the training set.
  bool estimate_ground = true;
  FitConfig fit;
  BenchmarkSettings benchmark;
  evaluation::SynthConfig synthetic;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Missing keys keep their defaults. Errors: ConfigError, SchemaVersionMismatch.
RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& cfg);

/// Errors: IoError, ConfigError, SchemaVersionMismatch.
RunConfig load_run_config(const std::string& path);
void save_run_config(const RunConfig& cfg, const std::string& path);

HolidayCalendar holiday_calendar(const RunConfig& cfg);

}  // namespace helios

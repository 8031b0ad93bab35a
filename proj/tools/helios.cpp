#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "helios/config.hpp"
#include "helios/csv.hpp"
#include "helios/error.hpp"
#include "helios/pipeline.hpp"

namespace {

using namespace helios;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kIo = 2;
constexpr int kNotConverged = 3;

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
};

RunConfig load_config(const CommonOptions& o) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : load_run_config(o.config);
  if (o.seed) {
    cfg.seed = *o.seed;
    cfg.synthetic.seed = *o.seed;
  }
  return cfg;
}

std::ofstream open_output(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

Dataset read_dataset(const std::string& path, const RunConfig& cfg) {
  if (path.empty()) throw ConfigError("no data path given");
  return ingest_csv(path, {}, holiday_calendar(cfg));
}

std::string fmt(double v, int precision) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

void print_table(const std::vector<evaluation::BenchmarkRow>& rows) {
  std::cout << std::left << std::setw(11) << "model" << std::setw(10) << "period" << std::right << std::setw(8) << "R2"
            << std::setw(12) << "RMSE" << std::setw(12) << "MAE" << std::setw(10) << "MAPE" << '\n';
  for (const auto& r : rows) {
    const auto& m = r.metrics;
    std::cout << std::left << std::setw(11) << r.model << std::setw(10) << evaluation::period_name(m.period)
              << std::right << std::setw(8) << fmt(m.r2, 3) << std::setw(12) << fmt(m.rmse, 2) << std::setw(12)
              << fmt(m.mae, 2) << std::setw(10) << fmt(m.mape, 2) << '\n';
  }
}

int cmd_generate(const CommonOptions& common, std::optional<int> years, const std::string& out_path,
                 const std::string& labels_path) {
  RunConfig cfg = load_config(common);
  if (years) cfg.synthetic.years = *years;
  cfg.synthetic.validate();
  const evaluation::SyntheticData syn = evaluation::generate_synthetic(cfg.synthetic);
  {
    auto out = open_output(out_path);
    write_csv_stream(syn.data, out);
    finish(out, out_path);
  }
  {
    auto out = open_output(labels_path);
    write_labels_csv(out, syn);
    finish(out, labels_path);
  }
  std::cout << "seed " << cfg.synthetic.seed << ", " << syn.data.size() << " rows -> " << out_path << ", "
            << labels_path << '\n';
  return kOk;
}

int cmd_train(const CommonOptions& common, std::string data_path, std::string model_path,
              const std::string& trace_path, const std::optional<std::string>& variant, bool allow_nonconverged) {
  RunConfig cfg = load_config(common);
  if (variant) cfg.variant = evaluation::parse_variant(*variant);
  if (data_path.empty()) data_path = cfg.data_path;
  if (model_path.empty()) model_path = cfg.model_path.empty() ? "model.json" : cfg.model_path;
  const Dataset ds = read_dataset(data_path, cfg);
  const FitResult r = train_model(cfg, ds, cfg.variant);
  {
    const std::filesystem::path p(model_path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    save_model(r.model, model_path);
  }
  {
    auto out = open_output(trace_path);
    write_trace_csv(out, r.report);
    finish(out, trace_path);
  }
  const auto& rep = r.report;
  std::cout << model_label(cfg.variant) << ": " << rep.objective.size() << " outer iterations, "
            << rep.inner_iterations << " inner, objective "
            << csv::format_double(rep.objective.empty() ? rep.initial_objective : rep.objective.back()) << ", "
            << (rep.converged ? "converged" : rep.stalled ? "stalled" : "not converged") << '\n';
  if (!rep.converged && !allow_nonconverged) {
    std::cerr << "error: fit did not converge (model written; pass --allow-nonconverged to accept)\n";
    return kNotConverged;
  }
  return kOk;
}

int cmd_forecast(const CommonOptions& common, const std::string& model_path, const std::string& history_path,
                 const std::string& exogenous_path, std::optional<int> horizon, const std::string& out_path) {
  const RunConfig cfg = load_config(common);
  const HeliosModel m = load_model(model_path);
  const Dataset history = read_dataset(history_path, cfg);
  const Dataset future = read_dataset(exogenous_path, cfg);
  const int h = horizon.value_or(cfg.benchmark.horizon);
  if (h < 1) throw ConfigError("horizon must be >= 1");
  const Decomposition d = forecast(m, history, h, future);
  if (out_path == "-") {
    write_forecast_csv(std::cout, d);
  } else {
    auto out = open_output(out_path);
    write_forecast_csv(out, d);
    finish(out, out_path);
    std::cout << d.size() << " steps -> " << out_path << '\n';
  }
  return kOk;
}

int cmd_evaluate(const CommonOptions& common, const std::string& train_path, const std::string& test_path,
                 std::optional<int> horizon, const std::optional<std::string>& period, std::string out_dir,
                 bool allow_nonconverged) {
  RunConfig cfg = load_config(common);
  if (horizon) {
    cfg.benchmark.horizon = *horizon;
    cfg.benchmark.stride = *horizon;
  }
  std::vector<evaluation::Period> periods{cfg.benchmark.period};
  if (period) {
    if (*period == "all")
      periods = {evaluation::Period::Hourly, evaluation::Period::Daily, evaluation::Period::Weekly,
                 evaluation::Period::Monthly, evaluation::Period::Biannual};
    else
      periods = {evaluation::parse_period(*period)};
  }
  cfg.validate();
  if (out_dir.empty()) out_dir = cfg.output_dir;
  const Dataset train = read_dataset(train_path, cfg);
  const Dataset test = read_dataset(test_path, cfg);

  const EvaluationRun run = run_evaluation(cfg, train, test);
  std::vector<evaluation::BenchmarkRow> rows;
  for (evaluation::Period p : periods) {
    std::vector<evaluation::BenchmarkRow> part;
    try {
      part = evaluation::benchmark(run.runs, cfg.benchmark.horizon, p);
    } catch (const InsufficientCoverage& e) {
      std::cerr << "warning: skipping " << evaluation::period_name(p) << ": " << e.what() << '\n';
      continue;
    }
    rows.insert(rows.end(), part.begin(), part.end());
  }
  const std::string results_path = (std::filesystem::path(out_dir) / "results.csv").string();
  const std::string predictions_path = (std::filesystem::path(out_dir) / "predictions.csv").string();
  {
    auto out = open_output(results_path);
    evaluation::write_results_csv(out, rows);
    finish(out, results_path);
  }
  {
    auto out = open_output(predictions_path);
    evaluation::write_predictions_csv(out, run.runs);
    finish(out, predictions_path);
  }
  print_table(rows);
  std::cout << "results -> " << results_path << ", predictions -> " << predictions_path << '\n';

  bool all_converged = true;
  for (std::size_t i = 0; i < run.reports.size(); ++i)
    if (!run.reports[i].converged) {
      all_converged = false;
      std::cerr << (allow_nonconverged ? "warning: " : "error: ") << run.runs[i].model << " fit did not converge\n";
    }
  return all_converged || allow_nonconverged ? kOk : kNotConverged;
}

int cmd_config(const CommonOptions& common, const std::string& out_path) {
  const RunConfig cfg = load_config(common);
  if (out_path == "-") {
    std::cout << to_json(cfg).dump(2) << '\n';
    return kOk;
  }
  save_run_config(cfg, out_path);
  std::cout << "config -> " << out_path << '\n';
  return kOk;
}

int error_code(const helios::Error& e) {
  if (dynamic_cast<const IoError*>(&e) || dynamic_cast<const MissingColumn*>(&e) ||
      dynamic_cast<const UnparsableRow*>(&e) || dynamic_cast<const NonMonotonicTimestamps*>(&e) ||
      dynamic_cast<const SchemaVersionMismatch*>(&e))
    return kIo;
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HELIOS district-heating heat-load model"};
  app.require_subcommand(1);

  CommonOptions common;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", common.config, "Run configuration (JSON)")->check(CLI::ExistingFile);
    cmd->add_option("--seed", common.seed, "Random seed (overrides the config)");
  };

  std::optional<int> years, horizon;
  std::optional<std::string> variant, period;
  std::string data_out = "data.csv", labels_out = "labels.csv";
  std::string data_path, model_path, trace_path = "trace.csv";
  std::string history_path, exogenous_path, forecast_out = "forecast.csv";
  std::string train_path, test_path, out_dir;
  std::string config_out = "-";
  bool allow_nonconverged = false;

  auto* gen = app.add_subcommand("generate", "Write a synthetic dataset and its component labels");
  add_common(gen);
  gen->add_option("--years", years, "Years of hourly data");
  gen->add_option("--out", data_out, "Dataset CSV")->capture_default_str();
  gen->add_option("--labels", labels_out, "Component label CSV")->capture_default_str();

  auto* train = app.add_subcommand("train", "Fit HELIOS and write the model and objective trace");
  add_common(train);
  train->add_option("--data", data_path, "Training CSV (default: paths.data from the config)");
  train->add_option("--model", model_path, "Model output (default: paths.model or model.json)");
  train->add_option("--trace", trace_path, "Objective trace CSV")->capture_default_str();
  train->add_option("--variant", variant, "Context variant")->check(CLI::IsMember({"expert", "nc", "wc"}));
  train->add_flag("--allow-nonconverged", allow_nonconverged, "Exit 0 even if the fit did not converge");

  auto* fc = app.add_subcommand("forecast", "Forecast the next hours with a trained model");
  add_common(fc);
  fc->add_option("--model", model_path, "Trained model")->required();
  fc->add_option("--history", history_path, "Measured history CSV")->required();
  fc->add_option("--exogenous", exogenous_path, "Weather and network temperatures for the forecast hours")
      ->required();
  fc->add_option("--horizon", horizon, "Steps ahead (default: benchmark.horizon)");
  fc->add_option("--out", forecast_out, "Forecast CSV, '-' for stdout")->capture_default_str();

  auto* ev = app.add_subcommand("evaluate", "Benchmark HELIOS variants against the baselines");
  add_common(ev);
  ev->add_option("--train", train_path, "Training CSV")->required();
  ev->add_option("--test", test_path, "Test CSV, starting one hour after the training set")->required();
  ev->add_option("--horizon", horizon, "Forecast horizon and rolling stride");
  ev->add_option("--period", period, "Aggregation period")
      ->check(CLI::IsMember({"hourly", "daily", "weekly", "monthly", "biannual", "all"}));
  ev->add_option("--out-dir", out_dir, "Directory for results.csv and predictions.csv");
  ev->add_flag("--allow-nonconverged", allow_nonconverged, "Exit 0 even if a fit did not converge");

  auto* cfg_cmd = app.add_subcommand("config", "Write the effective configuration");
  add_common(cfg_cmd);
  cfg_cmd->add_option("--out", config_out, "Output path, '-' for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen) return cmd_generate(common, years, data_out, labels_out);
    if (*train) return cmd_train(common, data_path, model_path, trace_path, variant, allow_nonconverged);
    if (*fc) return cmd_forecast(common, model_path, history_path, exogenous_path, horizon, forecast_out);
    if (*ev) return cmd_evaluate(common, train_path, test_path, horizon, period, out_dir, allow_nonconverged);
    if (*cfg_cmd) return cmd_config(common, config_out);
  } catch (const helios::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return error_code(e);
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}

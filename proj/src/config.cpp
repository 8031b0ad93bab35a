#include "helios/config.hpp"

#include <fstream>

#include "helios/error.hpp"

namespace helios {

namespace {

nlohmann::json synth_json(const evaluation::SynthConfig& s) {
  const auto& w = s.weather;
  return {{"years", s.years},
          {"start", format_timestamp(s.start)},
          {"buildings", s.buildings},
          {"comfort_setpoint", s.comfort_setpoint},
          {"setback_setpoint", s.setback_setpoint},
          {"activity", s.activity},
          {"conductance", s.conductance},
          {"solar_gain", s.solar_gain},
          {"infiltration", s.infiltration},
          {"building_spread", s.building_spread},
          {"time_constant_hours", s.time_constant_hours},
          {"control_gain", s.control_gain},
          {"heater_oversize", s.heater_oversize},
          {"heating_window_hours", s.heating_window_hours},
          {"heating_cutoff", s.heating_cutoff},
          {"hot_water_demand", s.hot_water_demand},
          {"lambda", s.lambda},
          {"peak_day", s.peak_day},
          {"loss_coefficient", s.loss_coefficient},
          {"loss_persistence", s.loss_persistence},
          {"noise_scale", s.noise_scale},
          {"hot_water_noise", s.hot_water_noise},
          {"weather",
           {{"mean_temperature", w.mean_temperature},
            {"annual_amplitude", w.annual_amplitude},
            {"coldest_day", w.coldest_day},
            {"diurnal_amplitude", w.diurnal_amplitude},
            {"noise_persistence", w.noise_persistence},
            {"noise_innovation", w.noise_innovation},
            {"peak_radiance", w.peak_radiance},
            {"wind_median", w.wind_median},
            {"wind_log_sigma", w.wind_log_sigma}}}};
}

template <typename T>
void read(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

evaluation::SynthConfig synth_from(const nlohmann::json& j, evaluation::SynthConfig s) {
  read(j, "years", s.years);
  if (j.contains("start")) {
    const auto text = j.at("start").get<std::string>();
    if (!parse_timestamp(text, s.start)) throw ConfigError("synthetic.start: cannot parse '" + text + "'");
  }
  read(j, "buildings", s.buildings);
  read(j, "comfort_setpoint", s.comfort_setpoint);
  read(j, "setback_setpoint", s.setback_setpoint);
  read(j, "activity", s.activity);
  read(j, "conductance", s.conductance);
  read(j, "solar_gain", s.solar_gain);
  read(j, "infiltration", s.infiltration);
  read(j, "building_spread", s.building_spread);
  read(j, "time_constant_hours", s.time_constant_hours);
  read(j, "control_gain", s.control_gain);
  read(j, "heater_oversize", s.heater_oversize);
  read(j, "heating_window_hours", s.heating_window_hours);
  read(j, "heating_cutoff", s.heating_cutoff);
  read(j, "hot_water_demand", s.hot_water_demand);
  read(j, "lambda", s.lambda);
  read(j, "peak_day", s.peak_day);
  read(j, "loss_coefficient", s.loss_coefficient);
  read(j, "loss_persistence", s.loss_persistence);
  read(j, "noise_scale", s.noise_scale);
  read(j, "hot_water_noise", s.hot_water_noise);
  if (j.contains("weather")) {
    const auto& w = j.at("weather");
    read(w, "mean_temperature", s.weather.mean_temperature);
    read(w, "annual_amplitude", s.weather.annual_amplitude);
    read(w, "coldest_day", s.weather.coldest_day);
    read(w, "diurnal_amplitude", s.weather.diurnal_amplitude);
    read(w, "noise_persistence", s.weather.noise_persistence);
    read(w, "noise_innovation", s.weather.noise_innovation);
    read(w, "peak_radiance", s.weather.peak_radiance);
    read(w, "wind_median", s.weather.wind_median);
    read(w, "wind_log_sigma", s.weather.wind_log_sigma);
  }
  return s;
}

}  // namespace

void RunConfig::validate() const {
  for (const auto* set : {&contexts.setpoint, &contexts.season, &contexts.hot_water}) set->validate();
  priors.validate(contexts);
  model.validate();
  fit.validate();
  synthetic.validate();
  if (benchmark.horizon < 1) throw ConfigError("benchmark.horizon must be >= 1");
  if (benchmark.stride < 1) throw ConfigError("benchmark.stride must be >= 1");
  (void)HolidayCalendar::from_iso_dates(holidays);
}

RunConfig run_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (!j.contains("version")) throw ConfigError("config is missing 'version'");
  if (!j.at("version").is_number_integer() || j.at("version").get<int>() != kRunConfigVersion)
    throw SchemaVersionMismatch("config version " + j.at("version").dump() + " is not supported (expected " +
                                std::to_string(kRunConfigVersion) + ")");
  RunConfig cfg;
  try {
    read(j, "seed", cfg.seed);
    if (j.contains("paths")) {
      const auto& p = j.at("paths");
      read(p, "data", cfg.data_path);
      read(p, "model", cfg.model_path);
      read(p, "output_dir", cfg.output_dir);
    }
    read(j, "holidays", cfg.holidays);
    if (j.contains("variant")) cfg.variant = evaluation::parse_variant(j.at("variant").get<std::string>());
    if (j.contains("contexts")) cfg.contexts = contexts::context_sets_from_json(j.at("contexts"));
    cfg.priors = j.contains("priors") ? prior_spec_from_json(j.at("priors"), default_priors(cfg.contexts))
                                      : default_priors(cfg.contexts);
    if (j.contains("model")) {
      const auto& m = j.at("model");
      cfg.model = model_config_from_json(m);
      read(m, "estimate_ground", cfg.estimate_ground);
    }
    if (j.contains("fit")) {
      const auto& f = j.at("fit");
      read(f, "max_outer_iterations", cfg.fit.max_outer_iterations);
      read(f, "outer_tolerance", cfg.fit.outer_tolerance);
      read(f, "inner_max_iterations", cfg.fit.inner_max_iterations);
    }
    if (j.contains("benchmark")) {
      const auto& b = j.at("benchmark");
      read(b, "horizon", cfg.benchmark.horizon);
      read(b, "stride", cfg.benchmark.stride);
      read(b, "scramble_seed", cfg.benchmark.scramble_seed);
      if (b.contains("period")) cfg.benchmark.period = evaluation::parse_period(b.at("period").get<std::string>());
    }
    if (j.contains("synthetic")) cfg.synthetic = synth_from(j.at("synthetic"), cfg.synthetic);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json model = to_json(cfg.model);
  model["estimate_ground"] = cfg.estimate_ground;
  return {{"version", kRunConfigVersion},
          {"seed", cfg.seed},
          {"paths", {{"data", cfg.data_path}, {"model", cfg.model_path}, {"output_dir", cfg.output_dir}}},
          {"holidays", cfg.holidays},
          {"variant", evaluation::variant_name(cfg.variant)},
          {"contexts", contexts::to_json(cfg.contexts)},
          {"priors", to_json(cfg.priors)},
          {"model", model},
          {"fit",
           {{"max_outer_iterations", cfg.fit.max_outer_iterations},
            {"outer_tolerance", cfg.fit.outer_tolerance},
            {"inner_max_iterations", cfg.fit.inner_max_iterations}}},
          {"benchmark",
           {{"horizon", cfg.benchmark.horizon},
            {"stride", cfg.benchmark.stride},
            {"period", evaluation::period_name(cfg.benchmark.period)},
            {"scramble_seed", cfg.benchmark.scramble_seed}}},
          {"synthetic", synth_json(cfg.synthetic)}};
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
  return run_config_from_json(j);
}

void save_run_config(const RunConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write config file: " + path);
  out << to_json(cfg).dump(2) << '\n';
  if (!out) throw IoError("failed writing config file: " + path);
}

HolidayCalendar holiday_calendar(const RunConfig& cfg) { return HolidayCalendar::from_iso_dates(cfg.holidays); }

}  // namespace helios

#include "helios/problem.hpp"

#include <numbers>

#include "helios/error.hpp"

namespace helios {

PreparedData prepare(const ModelConfig& cfg, const Dataset& ds) {
  ds.require_contiguous("model evaluation");
  const auto n = static_cast<Eigen::Index>(ds.size());
  PreparedData out;
  out.hour.resize(ds.size());
  out.day.resize(ds.size());
  out.day_of_year.resize(ds.size());
  out.timestamp.resize(ds.size());
  out.ambient.resize(n);
  out.radiance.resize(n);
  out.wind.resize(n);
  out.load.resize(n);
  out.pipe_gap.resize(n);
  out.seasonal_cosine.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Row& r = ds[static_cast<std::size_t>(k)];
    const auto i = static_cast<std::size_t>(k);
    out.hour[i] = r.calendar.hour;
    out.day[i] = day_index(r.calendar.day_type);
    out.day_of_year[i] = r.calendar.day_of_year;
    out.timestamp[i] = r.calendar.timestamp;
    out.ambient[k] = r.weather.ambient_temperature;
    out.radiance[k] = r.weather.global_radiance;
    out.wind[k] = r.weather.wind_speed;
    out.load[k] = r.substation.heat_load;
    const double t_sr = features::equivalent_pipe_temperature(r.substation.supply_temperature,
                                                              r.substation.return_temperature);
    out.pipe_gap[k] = t_sr - features::ground_temperature<double>(r.calendar.day_of_year, cfg.ground);
    out.seasonal_cosine[k] =
        std::cos(2.0 * std::numbers::pi * (r.calendar.day_of_year - cfg.hot_water_peak_day) / 365.0);
  }
  out.season = features::season_series(out.ambient, cfg.season_window);
  out.burn_in_season = out.season;
  double partial = 0.0;
  for (Eigen::Index k = 0; k < std::min<Eigen::Index>(n, cfg.season_window); ++k) {
    out.burn_in_season[k] = k == 0 ? out.ambient[0] : partial / static_cast<double>(k);
    partial += out.ambient[k];
  }
  out.fourier = features::fourier_table(cfg.fourier);
  out.first_row = std::min<Eigen::Index>(n, cfg.warmup_rows());
  return out;
}

ContextWeights context_weights(const contexts::ContextSets& sets, const Dataset& ds, const Eigen::VectorXd& season) {
  return {contexts::weight_matrix(sets.setpoint, ds, season), contexts::weight_matrix(sets.season, ds, season),
          contexts::weight_matrix(sets.hot_water, ds, season)};
}

ContextWeights context_weights(const contexts::ContextSets& sets, const PreparedData& data) {
  auto build = [&](const contexts::ContextSet& set) {
    Eigen::MatrixXd w(data.rows(), static_cast<Eigen::Index>(set.size()));
    for (Eigen::Index k = 0; k < data.rows(); ++k) {
      const auto i = static_cast<std::size_t>(k);
      const auto d = static_cast<DayType>(data.day[i] + 1);
      for (std::size_t c = 0; c < set.size(); ++c)
        w(k, static_cast<Eigen::Index>(c)) =
            contexts::possibility_weight(set.contexts[c], data.hour[i], d, data.season[k]);
    }
    return w;
  };
  return {build(sets.setpoint), build(sets.season), build(sets.hot_water)};
}

}  // namespace helios

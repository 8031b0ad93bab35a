#include "helios/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <random>
#include <vector>

#include "helios/error.hpp"

namespace helios::evaluation {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Building {
  double conductance;
  double solar_gain;
  double infiltration;
  double capacity;  // kWh/K
  double heater;    // kW
  double cutoff;    // degC
  int shift;        // schedule offset, hours
  bool heats;
  double indoor;
};

bool in_window(int hour, int start, int end) { return hour >= start && hour < end; }

bool comfort_hour(int hour, DayType d, int shift) {
  const int h = ((hour - shift) % 24 + 24) % 24;
  if (d == DayType::WeekendHoliday) return in_window(h, 8, 23);
  return in_window(h, 6, 9) || in_window(h, 17, 23);
}

// Index into hot_water_demand: night, waking-up, working-hours, after-work.
int activity_at(int hour, DayType d) {
  const int wake = d == DayType::WeekendHoliday ? 8 : 6;
  if (hour < wake || hour >= 22) return 0;
  if (hour < wake + 3) return 1;
  if (hour < 17) return 2;
  return 3;
}

}  // namespace

void SynthConfig::validate() const {
  auto require = [](bool ok, const char* field, const char* rule) {
    if (!ok) throw ConfigError(std::string(field) + " " + rule);
  };
  require(years >= 1, "years", "must be >= 1");
  require(buildings >= 1, "buildings", "must be >= 1");
  require(activity >= 0.0 && activity <= 1.0, "activity", "must be in [0, 1]");
  require(conductance >= 0.0, "conductance", "must be >= 0");
  require(solar_gain >= 0.0, "solar_gain", "must be >= 0");
  require(infiltration >= 0.0, "infiltration", "must be >= 0");
  require(building_spread >= 0.0 && building_spread < 1.0, "building_spread", "must be in [0, 1)");
  require(time_constant_hours > 0.0, "time_constant_hours", "must be > 0");
  require(heating_window_hours >= 1, "heating_window_hours", "must be >= 1");
  require(control_gain > 0.0 && control_gain <= 1.0, "control_gain", "must be in (0, 1]");
  require(heater_oversize > 0.0, "heater_oversize", "must be > 0");
  for (double q : hot_water_demand) require(q >= 0.0, "hot_water_demand", "must be >= 0");
  require(lambda >= 0.0 && lambda < 1.0, "lambda", "must be in [0, 1)");
  require(loss_coefficient >= 0.0, "loss_coefficient", "must be >= 0");
  require(loss_persistence >= 0.0 && loss_persistence < 1.0, "loss_persistence", "must be in [0, 1)");
  require(noise_scale >= 0.0, "noise_scale", "must be >= 0");
  require(hot_water_noise >= 0.0, "hot_water_noise", "must be >= 0");
  require(weather.noise_persistence >= 0.0 && weather.noise_persistence < 1.0, "weather.noise_persistence",
          "must be in [0, 1)");
  require(weather.noise_innovation >= 0.0, "weather.noise_innovation", "must be >= 0");
  require(weather.wind_median > 0.0, "weather.wind_median", "must be > 0");
  require(weather.peak_radiance >= 0.0, "weather.peak_radiance", "must be >= 0");
  ground.validate();
}

SyntheticData generate_synthetic(const SynthConfig& cfg) {
  cfg.validate();
  const std::size_t n = static_cast<std::size_t>(cfg.years) * 8760;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Building> fleet(static_cast<std::size_t>(cfg.buildings));
  const auto heating = static_cast<std::size_t>(std::lround(cfg.activity * cfg.buildings));
  for (std::size_t b = 0; b < fleet.size(); ++b) {
    auto draw = [&](double nominal) { return nominal * (1.0 + cfg.building_spread * (2.0 * unit(rng) - 1.0)); };
    Building& bl = fleet[b];
    bl.conductance = draw(cfg.conductance);
    bl.solar_gain = draw(cfg.solar_gain);
    bl.infiltration = draw(cfg.infiltration);
    bl.capacity = bl.conductance * draw(cfg.time_constant_hours);
    bl.heater = cfg.heater_oversize * bl.conductance * (cfg.comfort_setpoint + 5.0);
    bl.cutoff = cfg.heating_cutoff + 3.0 * (unit(rng) - 0.5);
    bl.shift = static_cast<int>(std::floor(3.0 * unit(rng))) - 1;
    bl.heats = b < heating;
    bl.indoor = cfg.comfort_setpoint;
  }

  const HolidayCalendar holidays;
  const WeatherSettings& w = cfg.weather;
  std::vector<Row> rows(n);
  SyntheticData out;
  out.space.resize(static_cast<Eigen::Index>(n));
  out.hot_water.resize(static_cast<Eigen::Index>(n));
  out.loss.resize(static_cast<Eigen::Index>(n));
  out.noise.resize(static_cast<Eigen::Index>(n));

  double temp_noise = 0.0, wind_noise = 0.0, cloud = 1.0, loss = 0.0;
  std::deque<double> week;
  double week_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    Row& r = rows[k];
    r.calendar = derive_calendar(cfg.start + static_cast<Timestamp>(k) * kSecondsPerHour, holidays);
    const int hour = r.calendar.hour;
    const DayType day = r.calendar.day_type;
    const double doy = r.calendar.day_of_year + hour / 24.0;

    // Weather.
    temp_noise = w.noise_persistence * temp_noise + w.noise_innovation * gauss(rng);
    const double ta = w.mean_temperature - w.annual_amplitude * std::cos(kTwoPi * (doy - w.coldest_day) / 365.0) +
                      w.diurnal_amplitude * std::cos(kTwoPi * (hour - 15) / 24.0) + temp_noise;
    if (hour == 0 || k == 0) cloud = 0.2 + 0.8 * unit(rng);
    const double day_length = 12.0 + 4.0 * std::sin(kTwoPi * (doy - 80.0) / 365.0);
    const double sunrise = 12.0 - day_length / 2.0;
    const double arc = std::max(0.0, std::sin(std::numbers::pi * (hour + 0.5 - sunrise) / day_length));
    const double elevation = 0.35 + 0.65 * (day_length - 8.0) / 8.0;
    const double g = w.peak_radiance * elevation * cloud * (hour + 0.5 > sunrise && hour + 0.5 < sunrise + day_length ? arc : 0.0);
    wind_noise = 0.9 * wind_noise + std::sqrt(1.0 - 0.81) * gauss(rng);
    const double vw = w.wind_median * std::exp(w.wind_log_sigma * wind_noise);
    r.weather = {ta, g, vw};

    week.push_back(ta);
    week_sum += ta;
    if (week.size() > static_cast<std::size_t>(cfg.heating_window_hours)) {
      week_sum -= week.front();
      week.pop_front();
    }
    const double trailing_mean = week_sum / static_cast<double>(week.size());

    // Space heating: thermostat-controlled buildings, one-hour steps.
    double space = 0.0;
    for (Building& b : fleet) {
      const double gap = b.indoor - ta;
      const double losses = b.conductance * gap + b.infiltration * vw * gap - b.solar_gain * g;
      double q = 0.0;
      if (b.heats && trailing_mean < b.cutoff) {
        const double target = comfort_hour(hour, day, b.shift) ? cfg.comfort_setpoint : cfg.setback_setpoint;
        q = std::clamp(losses + cfg.control_gain * b.capacity * (target - b.indoor), 0.0, b.heater);
      }
      b.indoor += (q - losses) / b.capacity;
      space += q;
    }

    // Hot water.
    const double demand = cfg.activity * cfg.hot_water_demand[static_cast<std::size_t>(activity_at(hour, day))];
    const double seasonal = 1.0 + cfg.lambda * std::cos(kTwoPi * (r.calendar.day_of_year - cfg.peak_day) / 365.0);
    const double hot = std::max(0.0, demand * seasonal * (1.0 + cfg.hot_water_noise * gauss(rng)));

    // Network temperatures and piping loss.
    const double supply = 70.0 + std::clamp(15.0 - ta, 0.0, 20.0) + 0.5 * gauss(rng);
    const double ret = 40.0 + 0.4 * (supply - 70.0) + 0.5 * gauss(rng);
    const double pipe_gap = features::equivalent_pipe_temperature(supply, ret) -
                            features::ground_temperature<double>(r.calendar.day_of_year, cfg.ground);
    const double steady = cfg.loss_coefficient * std::max(0.0, pipe_gap);
    loss = k == 0 ? steady : cfg.loss_persistence * loss + (1.0 - cfg.loss_persistence) * steady;

    const double clean = space + hot + loss;
    const double eps = std::max(cfg.noise_scale * gauss(rng), -clean);
    r.substation = {clean + eps, supply, ret};

    const auto i = static_cast<Eigen::Index>(k);
    out.space[i] = space;
    out.hot_water[i] = hot;
    out.loss[i] = loss;
    out.noise[i] = r.substation.heat_load - clean;
  }
  out.data = Dataset(std::move(rows));
  return out;
}

}  // namespace helios::evaluation

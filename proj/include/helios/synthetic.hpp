#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Dense>

#include "helios/data.hpp"
#include "helios/features.hpp"

namespace helios::evaluation {

struct WeatherSettings {
  double mean_temperature = 10.0;    // degC
  double annual_amplitude = 8.0;     // degC, coldest around coldest_day
  double coldest_day = 15.0;
  double diurnal_amplitude = 3.0;    // degC, warmest at 15:00
  double noise_persistence = 0.95;   // AR(1) coefficient, hourly
  double noise_innovation = 0.6;     // degC
  double peak_radiance = 700.0;      // W/m2 at summer noon under clear sky
  double wind_median = 3.5;          // m/s
  double wind_log_sigma = 0.45;
};

/// Ground truth of the synthetic district.
struct SynthConfig {
  int years = 1;
  std::uint64_t seed = 1;
  Timestamp start = 1514764800;  // 2018-01-01T00:00:00Z

  int buildings = 100;
  double comfort_setpoint = 20.0;  // degC
  double setback_setpoint = 16.0;
  double activity = 1.0;  // scales the share of heating buildings and hot-water use
  /// theta_1 (conductance, kW/K), theta_2 (solar gain, kW per W/m2) and
  /// theta_3 (wind infiltration, kW/(K m/s)) are drawn per building in
  /// [nominal * (1 - spread), nominal * (1 + spread)].
  double conductance = 0.3;
  double solar_gain = 0.004;
  double infiltration = 0.01;
  double building_spread = 0.3;
  double time_constant_hours = 40.0;  // C_b / theta_1
  /// Share of the indoor setpoint error the thermostat corrects per hour.
  double control_gain = 0.5;
  double heater_oversize = 2.5;        // capacity relative to design-day loss
  /// Heating is off while the trailing mean of T_a over this many hours
  /// exceeds the building's cutoff (heating_cutoff +- 1.5).
  int heating_window_hours = 24 * 90;
  double heating_cutoff = 10.0;

  /// Hot water demand per activity (night, waking-up, working-hours, after-work), kW.
  std::array<double, 4> hot_water_demand{4.0, 30.0, 10.0, 25.0};
  double lambda = 0.2;
  double peak_day = 15.0;  // d_m

  double loss_coefficient = 0.4;  // K_e, kW/K
  double loss_persistence = 0.5;  // first-order lag of the loss response
  features::GroundModelConfig ground;

  double noise_scale = 8.0;             // kW on the total load
  double hot_water_noise = 0.1;         // relative
  WeatherSettings weather;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

struct SyntheticData {
  Dataset data;
  Eigen::VectorXd space;
  Eigen::VectorXd hot_water;
  Eigen::VectorXd loss;
  Eigen::VectorXd noise;  // Q - (space + hot_water + loss)
};

/// Hourly dataset of years * 8760 rows. Deterministic per seed.
SyntheticData generate_synthetic(const SynthConfig& cfg);

}  // namespace helios::evaluation

#pragma once

#include <array>
#include <span>

#include <Eigen/Dense>

#include "helios/features.hpp"
#include "helios/gates.hpp"

namespace helios::components {

/// Context-mixture of setpoint temperatures.
struct SetpointModel {
  Eigen::MatrixXd zeta;  // |C_Tset| x 2, degC per (context, day type)
  gates::TimeGatingNetwork gate;
};

/// Fraction of households drawing space heat: a season mixture times a
/// time-of-day mixture.
struct ActiveHouseholdsModel {
  Eigen::VectorXd eta;  // per season context, in [0, 1]
  Eigen::MatrixXd mu;   // |C_Tset| x 2, in [0, 1]
  gates::SeasonGatingNetwork season_gate;
  gates::TimeGatingNetwork time_gate;
};

/// Lumped space-heating ARX. b[0] filters (T_set - T_a), b[1] radiance, b[2]
/// wind times (T_set - T_a); entry j of each filter applies to lag j.
struct SpaceHeatingARX {
  Eigen::VectorXd a;  // a[j-1] multiplies Q_space(k-j)
  std::array<Eigen::VectorXd, 3> b;
  std::array<double, 3> beta{0.0, 0.0, 0.0};

  int max_lag() const noexcept;
};

struct HotWaterModel {
  Eigen::VectorXd q;  // nominal demand per activity, kW
  gates::TimeGatingNetwork gate;
  double lambda = 0.2;
  double peak_day = 15.0;  // d_m
};

struct PipingLossModel {
  Eigen::VectorXd a;  // a[j-1] multiplies Q_loss(k-j)
  Eigen::VectorXd b;  // b[j] multiplies (T_sr - T_g)(k-j)
  double beta = 0.0;
  features::GroundModelConfig ground;

  int max_lag() const noexcept;
};

double setpoint_predict(const SetpointModel& m, int hour, DayType d);

/// alpha_s * alpha_i.
double active_fraction(const ActiveHouseholdsModel& m, double season, int hour, DayType d);

/// Lag windows for one space-heating step. All spans are ordered oldest to
/// newest. `past_space` ends at k-1; the exogenous windows end at k.
struct SpaceHeatingInputs {
  std::span<const double> past_space;
  std::span<const double> setpoint_gap;  // T_set - T_a
  std::span<const double> radiance;
  std::span<const double> wind;
  double active = 0.0;  // A(k)
};

/// Unclamped ARX output. Throws InsufficientLags.
double space_heating_raw(const SpaceHeatingARX& m, const SpaceHeatingInputs& in);
/// ARX output floored at zero.
double space_heating_predict(const SpaceHeatingARX& m, const SpaceHeatingInputs& in);

double user_demand(const HotWaterModel& m, int hour, DayType d);
/// 1 + lambda cos(2 pi (d_y - d_m) / 365).
double hot_water_correction(const HotWaterModel& m, int day_of_year);
double hot_water_predict(const HotWaterModel& m, int hour, DayType d, int day_of_year);

/// `past_loss` ends at k-1; `pipe_gap` holds (T_sr - T_g) ending at k.
double piping_loss_raw(const PipingLossModel& m, std::span<const double> past_loss,
                       std::span<const double> pipe_gap);
double piping_loss_predict(const PipingLossModel& m, std::span<const double> past_loss,
                           std::span<const double> pipe_gap);

}  // namespace helios::components

#include "helios/components.hpp"

#include <algorithm>
#include <numbers>

#include "helios/error.hpp"

namespace helios::components {

namespace {

// sum_j coef[j] * window[newest - j], newest = window.size() - 1 - offset
double filter(const Eigen::VectorXd& coef, std::span<const double> window) {
  double acc = 0.0;
  const auto newest = window.size() - 1;
  for (Eigen::Index j = 0; j < coef.size(); ++j) acc += coef[j] * window[newest - static_cast<std::size_t>(j)];
  return acc;
}

void require(std::span<const double> window, Eigen::Index needed, const char* name) {
  if (static_cast<Eigen::Index>(window.size()) < needed)
    throw InsufficientLags(std::string(name) + " window has " + std::to_string(window.size()) + " entries, needs " +
                           std::to_string(needed));
}

}  // namespace

int SpaceHeatingARX::max_lag() const noexcept {
  Eigen::Index lag = a.size();
  for (const auto& f : b) lag = std::max(lag, f.size() - 1);
  return static_cast<int>(lag);
}

int PipingLossModel::max_lag() const noexcept { return static_cast<int>(std::max(a.size(), b.size() - 1)); }

double setpoint_predict(const SetpointModel& m, int hour, DayType d) {
  const Eigen::VectorXd p = gates::time_gate_probs(m.gate, hour, d);
  return p.dot(m.zeta.col(day_index(d)));
}

double active_fraction(const ActiveHouseholdsModel& m, double season, int hour, DayType d) {
  const double alpha_s = gates::season_gate_probs(m.season_gate, season).dot(m.eta);
  const double alpha_i = gates::time_gate_probs(m.time_gate, hour, d).dot(m.mu.col(day_index(d)));
  return alpha_s * alpha_i;
}

double space_heating_raw(const SpaceHeatingARX& m, const SpaceHeatingInputs& in) {
  require(in.past_space, m.a.size(), "past space heating");
  require(in.setpoint_gap, m.b[0].size(), "setpoint gap");
  require(in.radiance, m.b[1].size(), "radiance");
  require(in.wind, m.b[2].size(), "wind");
  require(in.setpoint_gap, m.b[2].size(), "setpoint gap");

  double ar = 0.0;
  const auto newest = in.past_space.size() - 1;
  for (Eigen::Index j = 0; j < m.a.size(); ++j) ar += m.a[j] * in.past_space[newest - static_cast<std::size_t>(j)];

  double wind_term = 0.0;
  const auto wn = in.wind.size() - 1;
  const auto gn = in.setpoint_gap.size() - 1;
  for (Eigen::Index j = 0; j < m.b[2].size(); ++j) {
    const auto lag = static_cast<std::size_t>(j);
    wind_term += m.b[2][j] * in.wind[wn - lag] * in.setpoint_gap[gn - lag];
  }
  const double drive = m.beta[0] * filter(m.b[0], in.setpoint_gap) + m.beta[1] * filter(m.b[1], in.radiance) +
                       m.beta[2] * wind_term;
  return ar + in.active * drive;
}

double space_heating_predict(const SpaceHeatingARX& m, const SpaceHeatingInputs& in) {
  return std::max(0.0, space_heating_raw(m, in));
}

double user_demand(const HotWaterModel& m, int hour, DayType d) {
  return gates::time_gate_probs(m.gate, hour, d).dot(m.q);
}

double hot_water_correction(const HotWaterModel& m, int day_of_year) {
  return 1.0 + m.lambda * std::cos(2.0 * std::numbers::pi * (day_of_year - m.peak_day) / 365.0);
}

double hot_water_predict(const HotWaterModel& m, int hour, DayType d, int day_of_year) {
  return user_demand(m, hour, d) * hot_water_correction(m, day_of_year);
}

double piping_loss_raw(const PipingLossModel& m, std::span<const double> past_loss,
                       std::span<const double> pipe_gap) {
  require(past_loss, m.a.size(), "past loss");
  require(pipe_gap, m.b.size(), "pipe gap");
  double ar = 0.0;
  const auto newest = past_loss.size() - 1;
  for (Eigen::Index j = 0; j < m.a.size(); ++j) ar += m.a[j] * past_loss[newest - static_cast<std::size_t>(j)];
  return ar + m.beta * filter(m.b, pipe_gap);
}

double piping_loss_predict(const PipingLossModel& m, std::span<const double> past_loss,
                           std::span<const double> pipe_gap) {
  return std::max(0.0, piping_loss_raw(m, past_loss, pipe_gap));
}

}  // namespace helios::components

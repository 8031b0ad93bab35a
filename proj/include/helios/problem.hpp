#pragma once

#include <vector>

#include <Eigen/Dense>

#include "helios/data.hpp"
#include "helios/model.hpp"

namespace helios {

/// Per-row inputs derived once from a dataset for a given model structure.
struct PreparedData {
  std::vector<int> hour;
  std::vector<int> day;  // 0 weekday, 1 weekend/holiday
  std::vector<int> day_of_year;
  std::vector<Timestamp> timestamp;
  Eigen::VectorXd ambient;
  Eigen::VectorXd radiance;
  Eigen::VectorXd wind;
  Eigen::VectorXd load;
  Eigen::VectorXd pipe_gap;     // T_sr - T_g
  Eigen::VectorXd season;       // NaN before the season window fills
  Eigen::VectorXd burn_in_season;  // season, with a partial mean in the warm-up rows
  Eigen::VectorXd seasonal_cosine;  // cos(2 pi (d_y - d_m) / 365)
  Eigen::MatrixXd fourier;      // 24 x 2P
  Eigen::Index first_row = 0;   // first row entering the likelihood

  Eigen::Index rows() const noexcept { return ambient.size(); }
};

/// Requires a contiguous dataset (DatasetHasGaps otherwise).
PreparedData prepare(const ModelConfig& cfg, const Dataset& ds);

/// The three possibility-weight matrices, one row per dataset row.
struct ContextWeights {
  Eigen::MatrixXd setpoint;
  Eigen::MatrixXd season;
  Eigen::MatrixXd hot_water;
};

ContextWeights context_weights(const contexts::ContextSets& sets, const Dataset& ds, const Eigen::VectorXd& season);
ContextWeights context_weights(const contexts::ContextSets& sets, const PreparedData& data);

/// Component values inferred from the measured load and the other two
/// components' predictions, floored at zero.
struct ComponentTargets {
  Eigen::VectorXd space;
  Eigen::VectorXd hot_water;
  Eigen::VectorXd loss;
};

}  // namespace helios

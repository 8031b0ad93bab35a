#pragma once

#include <vector>

#include <Eigen/Dense>

#include "helios/data.hpp"
#include "helios/model.hpp"
#include "helios/problem.hpp"

namespace helios {

/// Per-step heat-load split. total is the sum of the three components.
struct Decomposition {
  std::vector<Timestamp> timestamps;
  Eigen::VectorXd space;
  Eigen::VectorXd hot_water;
  Eigen::VectorXd loss;
  Eigen::VectorXd total;

  Eigen::Index size() const noexcept { return total.size(); }
  void resize(Eigen::Index n);
  /// Sets row i and recomputes its total as space + hot_water + loss.
  void set(Eigen::Index i, Timestamp ts, double space_kw, double hot_water_kw, double loss_kw);
  void append(const Decomposition& other);
};

/// Model terms that do not depend on autoregressive feedback.
struct StaticTerms {
  Eigen::VectorXd setpoint;     // T_set estimate
  Eigen::VectorXd active;       // A estimate
  Eigen::VectorXd space_drive;  // bracketed exogenous sum multiplying A(k)
  Eigen::VectorXd hot_water;
  Eigen::VectorXd loss_drive;   // beta_4 * filtered pipe gap
};

StaticTerms static_terms(const Parameters& p, const PreparedData& data);

/// Unclamped one-step predictions with lags taken from the residual targets.
struct TeacherForcedPass {
  Eigen::VectorXd space;
  Eigen::VectorXd hot_water;
  Eigen::VectorXd loss;
  ComponentTargets targets;
};

TeacherForcedPass teacher_forced_pass(const Parameters& p, const PreparedData& data, const StaticTerms& terms);

ComponentTargets residual_targets(const Parameters& p, const PreparedData& data);
/// Targets for every row of `ds` under the model's current parameters.
ComponentTargets residual_targets(const HeliosModel& m, const Dataset& ds);

enum class PredictionMode { TeacherForced, Recursive };

/// Decomposed predictions for every row after the warm-up. Space heating and
/// loss are floored at zero. Throws InsufficientHistory on short datasets.
Decomposition predict_decomposed(const HeliosModel& m, const Dataset& ds, PredictionMode mode);

/// `horizon` recursive steps starting at row `origin`; lags before the origin
/// come from `targets`, later lags from the model's own outputs.
Decomposition forecast_from(const Parameters& p, const PreparedData& data, const StaticTerms& terms,
                            const ComponentTargets& targets, Eigen::Index origin, int horizon);

/// Multi-step forecast after `history` using known exogenous rows.
/// Throws MissingExogenous when `future` has fewer than `horizon` rows or does
/// not continue the history hourly.
Decomposition forecast(const HeliosModel& m, const Dataset& history, int horizon, const Dataset& future);

}  // namespace helios

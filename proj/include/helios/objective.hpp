#pragma once

#include <Eigen/Dense>

#include "helios/data.hpp"
#include "helios/model.hpp"
#include "helios/problem.hpp"

namespace helios {

/// Weighted log-posterior over rows [first_row, N) of a prepared dataset,
/// evaluated on the unconstrained parameter vector of `layout`.
class WeightedObjective {
 public:
  /// Component targets held fixed.
  WeightedObjective(const HeliosModel& structure, PreparedData data, ContextWeights weights, ComponentTargets targets);
  /// Component targets recomputed from the evaluated parameters, and
  /// differentiated through.
  WeightedObjective(const HeliosModel& structure, PreparedData data, ContextWeights weights);

  const ParameterLayout& layout() const noexcept { return layout_; }
  const PreparedData& data() const noexcept { return data_; }
  /// Fixed targets; zeros when the targets follow the parameters.
  const ComponentTargets& targets() const noexcept { return targets_; }
  bool targets_follow_parameters() const noexcept { return follow_; }

  /// Throws NonFiniteObjective.
  double value(const Eigen::VectorXd& unconstrained) const;
  /// Value plus the gradient with respect to the unconstrained vector.
  /// Throws NonFiniteObjective or NonFiniteGradient.
  double value_and_gradient(const Eigen::VectorXd& unconstrained, Eigen::VectorXd& gradient) const;

  /// Log-likelihood part only, on a constrained parameter set. When `grad` is
  /// non-null it receives the derivative with respect to every field.
  double log_likelihood(const Parameters& p, Parameters* grad) const;

 private:
  void check_shapes() const;
  double evaluate(const Parameters& p, const ComponentTargets& y, Parameters* grad) const;

  ModelConfig config_;
  contexts::ContextSets sets_;
  ParameterLayout layout_;
  PreparedData data_;
  ContextWeights weights_;
  ComponentTargets targets_;
  bool follow_ = false;
};

/// Objective at the model's current parameters, with targets derived from
/// the same parameters. Throws NonFiniteObjective.
double weighted_log_posterior(const HeliosModel& m, const Dataset& ds, const PriorSpec& priors,
                              const ContextWeights& weights);

/// Gradient of weighted_log_posterior over the unconstrained parameters,
/// targets held fixed. Throws NonFiniteGradient.
Eigen::VectorXd objective_gradient(const HeliosModel& m, const Dataset& ds, const PriorSpec& priors,
                                   const ContextWeights& weights);

}  // namespace helios

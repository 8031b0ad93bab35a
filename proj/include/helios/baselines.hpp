#pragma once

#include <string>

#include <Eigen/Dense>

#include "helios/data.hpp"

namespace helios::evaluation {

enum class BaselineKind { LR, Ridge, LASSO, ARX };

std::string baseline_name(BaselineKind kind);

struct BaselineSpec {
  BaselineKind kind = BaselineKind::LR;
  /// Penalty on standardised coefficients: Ridge minimises
  /// mean((y - Xb)^2) + strength |b|^2, LASSO 0.5 mean((y - Xb)^2) + strength |b|_1.
  double strength = 0.0;
  int ar_order = 1;  // ARX only
};

BaselineSpec default_baseline(BaselineKind kind);

/// y ~ intercept + X coef (+ sum_j ar[j] y(k-1-j) for ARX).
struct LinearModel {
  Eigen::VectorXd coef;
  double intercept = 0.0;
  Eigen::VectorXd ar;
};

/// Ordinary least squares through the normal equations. Throws
/// SingularDesign when X (centred) is rank deficient.
LinearModel linear_regression(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);
LinearModel ridge_regression(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double strength);
/// Coordinate descent until the largest coefficient update is below `tolerance`.
LinearModel lasso_regression(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double strength,
                             double tolerance = 1e-8, int max_sweeps = 100000);
/// Least squares on `order` lags of y plus the current row of X. The first
/// `order` rows only serve as lags.
LinearModel arx_regression(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int order);

/// T_a, V_w, G, weekend/holiday indicator, and the hour-of-day Fourier pairs.
Eigen::MatrixXd baseline_features(const Dataset& ds, int harmonics = 3);

struct BaselineModel {
  BaselineSpec spec;
  LinearModel fit;
  int harmonics = 3;
};

/// Errors: DatasetHasGaps, SingularDesign.
BaselineModel fit_baseline(const BaselineSpec& spec, const Dataset& train);

/// One-step predictions over `ds`; ARX uses measured lags (rows before the
/// order repeat the first row).
Eigen::VectorXd predict_baseline(const BaselineModel& m, const Dataset& ds);

/// `horizon` steps from row `origin` of `X`/`y`; ARX feeds back its own
/// predictions after the origin.
Eigen::VectorXd forecast_baseline(const BaselineModel& m, const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                  Eigen::Index origin, int horizon);

}  // namespace helios::evaluation

#pragma once

#include <cstddef>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "helios/data.hpp"

namespace helios::evaluation {

enum class Period { Hourly, Daily, Weekly, Monthly, Biannual };

std::string period_name(Period p);
/// Throws ConfigError for unknown names.
Period parse_period(const std::string& name);

struct MetricsReport {
  double rmse = 0.0;  // kW
  double r2 = 0.0;
  double mae = 0.0;   // kW
  double mape = 0.0;  // percent
  std::size_t count = 0;
  std::size_t mape_skipped = 0;  // rows with |y| < 1e-6
  int horizon = 0;
  Period period = Period::Hourly;
};

/// Errors: LengthMismatch (different lengths or fewer than 2 rows),
/// DegenerateVariance (constant y).
MetricsReport compute_metrics(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat);

/// Sums y and yhat over complete calendar buckets (UTC days, Monday-based
/// weeks, months, half-years) and scores the bucket totals. Partial buckets at
/// either end are dropped. R2 is NaN when fewer than two buckets remain or
/// their totals are constant. Errors: LengthMismatch, InsufficientCoverage.
MetricsReport aggregate_horizon_metrics(std::span<const Timestamp> timestamps, const Eigen::VectorXd& y,
                                        const Eigen::VectorXd& yhat, Period period);

}  // namespace helios::evaluation

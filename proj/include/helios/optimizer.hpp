#pragma once

#include <functional>

#include <Eigen/Dense>

namespace helios {

struct LbfgsOptions {
  int max_iterations = 200;
  int memory = 10;
  double gradient_tolerance = 1e-6;   // on the infinity norm
  double relative_tolerance = 1e-11;  // on the objective improvement
  double armijo = 1e-4;
  int max_backtracks = 40;
};

struct LbfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Returns f(x) and writes its gradient. May throw on invalid points; the
/// line search treats a throw as a rejected step.
using ValueAndGradient = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

/// Maximises f with limited-memory BFGS and a backtracking Armijo search.
/// Every accepted step strictly increases f.
LbfgsResult maximize_lbfgs(const ValueAndGradient& f, Eigen::VectorXd x0, const LbfgsOptions& opt = {});

}  // namespace helios

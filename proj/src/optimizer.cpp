#include "helios/optimizer.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace helios {

LbfgsResult maximize_lbfgs(const ValueAndGradient& f, Eigen::VectorXd x0, const LbfgsOptions& opt) {
  // Internally minimise g(x) = -f(x).
  LbfgsResult res;
  res.x = std::move(x0);
  Eigen::VectorXd grad;
  double fx = -f(res.x, grad);
  grad = -grad;
  res.value = -fx;

  std::deque<Eigen::VectorXd> s_hist, y_hist;
  std::deque<double> rho_hist;

  for (int it = 0; it < opt.max_iterations; ++it) {
    if (grad.lpNorm<Eigen::Infinity>() <= opt.gradient_tolerance) {
      res.converged = true;
      break;
    }

    // Two-loop recursion for the search direction.
    Eigen::VectorXd q = grad;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t i = s_hist.size(); i-- > 0;) {
      alpha[i] = rho_hist[i] * s_hist[i].dot(q);
      q -= alpha[i] * y_hist[i];
    }
    double gamma = 1.0;
    if (!s_hist.empty()) gamma = s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    else gamma = 1.0 / std::max(1.0, grad.norm());
    q *= gamma;
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      const double beta = rho_hist[i] * y_hist[i].dot(q);
      q += (alpha[i] - beta) * s_hist[i];
    }
    Eigen::VectorXd dir = -q;
    double slope = grad.dot(dir);
    if (!(slope < 0.0)) {
      // Not a descent direction: restart from steepest descent.
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      dir = -grad / std::max(1.0, grad.norm());
      slope = grad.dot(dir);
    }

    double step = 1.0;
    bool accepted = false;
    Eigen::VectorXd x_new, g_new;
    double f_new = 0.0;
    for (int b = 0; b < opt.max_backtracks; ++b) {
      x_new = res.x + step * dir;
      try {
        f_new = -f(x_new, g_new);
        if (std::isfinite(f_new) && f_new <= fx + opt.armijo * step * slope && f_new < fx) {
          accepted = true;
          break;
        }
      } catch (const std::exception&) {
        // Invalid point: shrink.
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!s_hist.empty()) {
        s_hist.clear();
        y_hist.clear();
        rho_hist.clear();
        continue;
      }
      break;
    }
    g_new = -g_new;
    const Eigen::VectorXd s = x_new - res.x;
    const Eigen::VectorXd y = g_new - grad;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      s_hist.push_back(s);
      y_hist.push_back(y);
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > opt.memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    const double improvement = fx - f_new;
    res.x = std::move(x_new);
    grad = std::move(g_new);
    fx = f_new;
    res.value = -fx;
    res.iterations = it + 1;
    if (improvement <= opt.relative_tolerance * std::max(1.0, std::abs(fx))) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace helios

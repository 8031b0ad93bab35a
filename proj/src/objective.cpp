#include "helios/objective.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

#include "helios/error.hpp"
#include "helios/gates.hpp"
#include "helios/predict.hpp"

namespace helios {

namespace {

constexpr double kHalfLogTwoPi = 0.91893853320467274178;

inline double log_normal(double y, double mean, double sigma) {
  const double z = (y - mean) / sigma;
  return -kHalfLogTwoPi - std::log(sigma) - 0.5 * z * z;
}

inline Eigen::Index lag_index(Eigen::Index k, Eigen::Index j) { return std::max<Eigen::Index>(0, k - j); }

double log_sum_exp(const Eigen::Ref<const Eigen::VectorXd>& w) {
  const double m = w.maxCoeff();
  if (!std::isfinite(m)) return m;
  return m + std::log((w.array() - m).exp().sum());
}

// Accumulates d/dlogits of sum_c weight_c * log softmax(z)_c.
inline Eigen::VectorXd weighted_log_softmax_grad(const Eigen::VectorXd& weight, const Eigen::VectorXd& p) {
  return weight - p * weight.sum();
}

// d/dlogits of sum_c p_c v_c, scaled by `upstream`.
inline Eigen::VectorXd mixture_grad(double upstream, const Eigen::VectorXd& p, const Eigen::VectorXd& v) {
  const double mean = p.dot(v);
  return upstream * (p.array() * (v.array() - mean)).matrix();
}

void check_alignment(const Eigen::MatrixXd& w, Eigen::Index rows, Eigen::Index contexts, const char* name) {
  if (w.rows() != rows || w.cols() != contexts)
    throw AlignmentMismatch(std::string(name) + " weights are " + std::to_string(w.rows()) + "x" +
                            std::to_string(w.cols()) + ", expected " + std::to_string(rows) + "x" +
                            std::to_string(contexts));
}

}  // namespace

WeightedObjective::WeightedObjective(const HeliosModel& structure, PreparedData data, ContextWeights weights,
                                     ComponentTargets targets)
    : config_(structure.config),
      sets_(structure.contexts),
      layout_(structure.config, structure.contexts, structure.priors),
      data_(std::move(data)),
      weights_(std::move(weights)),
      targets_(std::move(targets)) {
  check_shapes();
}

WeightedObjective::WeightedObjective(const HeliosModel& structure, PreparedData data, ContextWeights weights)
    : config_(structure.config),
      sets_(structure.contexts),
      layout_(structure.config, structure.contexts, structure.priors),
      data_(std::move(data)),
      weights_(std::move(weights)),
      follow_(true) {
  const Eigen::Index n = data_.rows();
  targets_ = {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  check_shapes();
}

void WeightedObjective::check_shapes() const {
  const Eigen::Index n = data_.rows();
  check_alignment(weights_.setpoint, n, static_cast<Eigen::Index>(sets_.setpoint.size()), "setpoint");
  check_alignment(weights_.season, n, static_cast<Eigen::Index>(sets_.season.size()), "season");
  check_alignment(weights_.hot_water, n, static_cast<Eigen::Index>(sets_.hot_water.size()), "hot water");
  if (targets_.space.size() != n || targets_.hot_water.size() != n || targets_.loss.size() != n)
    throw AlignmentMismatch("component targets do not match the dataset length");
}

namespace {

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0, carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

// Gate outputs for one (hour, day type) cell.
struct GateCell {
  Eigen::VectorXd p_set, log_set, p_time, log_time, p_use, log_use;
};

void log_softmax_into(const Eigen::VectorXd& z, Eigen::VectorXd& log_p, Eigen::VectorXd& p) {
  log_p = gates::log_softmax_stable(z);
  p = log_p.array().exp();
}

}  // namespace

double WeightedObjective::log_likelihood(const Parameters& p, Parameters* grad) const {
  if (!follow_) return evaluate(p, targets_, grad);
  return evaluate(p, residual_targets(p, data_), grad);
}

double WeightedObjective::evaluate(const Parameters& p, const ComponentTargets& y, Parameters* grad) const {
  const PreparedData& x = data_;
  const Eigen::Index n = x.rows();
  const Eigen::Index ct = p.setpoint.zeta.rows();
  const Eigen::Index cs = p.active.eta.size();
  const Eigen::Index cu = p.hot_water.q.size();
  const double sigma = p.noise_scale;
  const double inv_var = 1.0 / (sigma * sigma);
  const double log_norm = -kHalfLogTwoPi - std::log(sigma);
  const auto& sp = p.space;
  const auto& ls = p.loss;
  const Eigen::Index nb1 = sp.b[0].size(), nb2 = sp.b[1].size(), nb3 = sp.b[2].size(), nb4 = ls.b.size();
  const Eigen::Index na1 = sp.a.size(), na2 = ls.a.size();

  // Time gates depend on (hour, day type) only.
  std::array<GateCell, 48> cells;
  for (int d = 0; d < 2; ++d)
    for (int h = 0; h < 24; ++h) {
      GateCell& c = cells[static_cast<std::size_t>(d * 24 + h)];
      const Eigen::VectorXd r = x.fourier.row(h).transpose();
      log_softmax_into(p.setpoint.gate.weights[d] * r, c.log_set, c.p_set);
      log_softmax_into(p.active.time_gate.weights[d] * r, c.log_time, c.p_time);
      log_softmax_into(p.hot_water.gate.weights[d] * r, c.log_use, c.p_use);
    }
  std::vector<std::uint8_t> cell_of(static_cast<std::size_t>(n));
  for (Eigen::Index t = 0; t < n; ++t) {
    const auto i = static_cast<std::size_t>(t);
    cell_of[i] = static_cast<std::uint8_t>(x.day[i] * 24 + x.hour[i]);
  }
  auto cell = [&](Eigen::Index t) -> const GateCell& { return cells[cell_of[static_cast<std::size_t>(t)]]; };
  auto day_of = [&](Eigen::Index t) { return x.day[static_cast<std::size_t>(t)]; };

  // Per-row terms of the three component predictions.
  Eigen::VectorXd gap(n);
  for (Eigen::Index t = 0; t < n; ++t) gap[t] = cell(t).p_set.dot(p.setpoint.zeta.col(day_of(t))) - x.ambient[t];
  Eigen::MatrixXd p_season(cs, n), log_season(cs, n);
  Eigen::VectorXd s1(n), s2(n), s3(n), s4(n), alpha_s(n), alpha_i(n), demand(n), correction(n), ar_space(n),
      ar_loss(n), pred_space(n), pred_hot(n), pred_loss(n);
  {
    Eigen::VectorXd lp(cs), pp(cs);
    for (Eigen::Index k = 0; k < n; ++k) {
      const GateCell& gc = cell(k);
      log_softmax_into(p.active.season_gate.params.col(0) + p.active.season_gate.params.col(1) * x.burn_in_season[k],
                       lp, pp);
      log_season.col(k) = lp;
      p_season.col(k) = pp;
      double a = 0.0, b = 0.0, c = 0.0, e = 0.0;
      for (Eigen::Index m = 0; m < nb1; ++m) a += sp.b[0][m] * gap[lag_index(k, m)];
      for (Eigen::Index m = 0; m < nb2; ++m) b += sp.b[1][m] * x.radiance[lag_index(k, m)];
      for (Eigen::Index m = 0; m < nb3; ++m) {
        const Eigen::Index t = lag_index(k, m);
        c += sp.b[2][m] * x.wind[t] * gap[t];
      }
      for (Eigen::Index m = 0; m < nb4; ++m) e += ls.b[m] * x.pipe_gap[lag_index(k, m)];
      s1[k] = a;
      s2[k] = b;
      s3[k] = c;
      s4[k] = e;
      alpha_s[k] = pp.dot(p.active.eta);
      alpha_i[k] = gc.p_time.dot(p.active.mu.col(day_of(k)));
      demand[k] = gc.p_use.dot(p.hot_water.q);
      correction[k] = 1.0 + p.hot_water.lambda * x.seasonal_cosine[k];
      double as = 0.0, al = 0.0;
      for (Eigen::Index j = 1; j <= na1 && k - j >= 0; ++j) as += sp.a[j - 1] * y.space[k - j];
      for (Eigen::Index j = 1; j <= na2 && k - j >= 0; ++j) al += ls.a[j - 1] * y.loss[k - j];
      ar_space[k] = as;
      ar_loss[k] = al;
      pred_space[k] = as + alpha_s[k] * alpha_i[k] * (sp.beta[0] * a + sp.beta[1] * b + sp.beta[2] * c);
      pred_hot[k] = demand[k] * correction[k];
      pred_loss[k] = al + ls.beta * e;
    }
  }

  // d/d(component prediction) per row, and d/d(target) for the target-follow mode.
  const bool want = grad != nullptr;
  Eigen::VectorXd up_space, up_hot, up_loss, dy_space, dy_hot, dy_loss;
  Eigen::MatrixXd acc_set, acc_time, acc_use, d_season_gate;
  if (want) {
    for (auto* v : {&up_space, &up_hot, &up_loss, &dy_space, &dy_hot, &dy_loss}) *v = Eigen::VectorXd::Zero(n);
    acc_set = Eigen::MatrixXd::Zero(ct, 48);
    acc_time = Eigen::MatrixXd::Zero(ct, 48);
    acc_use = Eigen::MatrixXd::Zero(cu, 48);
    d_season_gate = Eigen::MatrixXd::Zero(cs, n);
  }
  Eigen::MatrixXd d_zeta_row;
  if (want) d_zeta_row = Eigen::MatrixXd::Zero(ct, n);

  const Eigen::Index combos = cs * ct * ct;
  Eigen::VectorXd wts(combos), resid_s(combos), gamma(combos);
  Eigen::VectorXd drive(ct), s_gap(ct), s_wind(ct), omega_a(ct), omega_t(ct), d_drive_l(ct);
  Eigen::VectorXd omega_s(cs);
  Eigen::VectorXd wu(cu), resid_w(cu), omega_u(cu);

  CompensatedSum total;
  double d_sigma = 0.0;
  auto gauss_sigma = [&](double resid) { return -1.0 / sigma + resid * resid * inv_var / sigma; };
  auto log_n = [&](double resid) { return log_norm - 0.5 * resid * resid * inv_var; };

  for (Eigen::Index k = x.first_row; k < n; ++k) {
    const int d = day_of(k);
    const std::size_t ci = cell_of[static_cast<std::size_t>(k)];
    const GateCell& gc = cells[ci];
    const auto log_ps = log_season.col(k);

    // p_Q and p_Ql.
    const double resid_q = x.load[k] - (pred_space[k] + pred_hot[k] + pred_loss[k]);
    const double resid_l = y.loss[k] - pred_loss[k];
    total.add(log_n(resid_q));
    total.add(log_n(resid_l));

    // Weighted space mixture over (i, j, l).
    const auto pi_s = weights_.season.row(k);
    const auto pi_t = weights_.setpoint.row(k);
    for (Eigen::Index l = 0; l < ct; ++l) {
      double g = 0.0, w = 0.0;
      for (Eigen::Index m = 0; m < nb1; ++m) {
        const Eigen::Index t = lag_index(k, m);
        g += sp.b[0][m] * (p.setpoint.zeta(l, day_of(t)) - x.ambient[t]);
      }
      for (Eigen::Index m = 0; m < nb3; ++m) {
        const Eigen::Index t = lag_index(k, m);
        w += sp.b[2][m] * x.wind[t] * (p.setpoint.zeta(l, day_of(t)) - x.ambient[t]);
      }
      s_gap[l] = g;
      s_wind[l] = w;
      drive[l] = sp.beta[0] * g + sp.beta[1] * s2[k] + sp.beta[2] * w;
    }
    const double ys = y.space[k];
    Eigen::Index c = 0;
    for (Eigen::Index i = 0; i < cs; ++i)
      for (Eigen::Index j = 0; j < ct; ++j) {
        const double em = p.active.eta[i] * p.active.mu(j, d);
        const double gate_ij = pi_s[i] * log_ps[i] + pi_t[j] * gc.log_time[j];
        for (Eigen::Index l = 0; l < ct; ++l, ++c) {
          const double pi = pi_s[i] * pi_t[j] * pi_t[l];
          resid_s[c] = ys - (ar_space[k] + em * drive[l]);
          wts[c] = gate_ij + pi_t[l] * gc.log_set[l] + (pi == 0.0 ? 0.0 : pi * log_n(resid_s[c]));
        }
      }
    const double lse_s = log_sum_exp(wts);
    total.add(lse_s);

    // Weighted hot-water mixture over u.
    const auto pi_u = weights_.hot_water.row(k);
    const double yw = y.hot_water[k];
    for (Eigen::Index u = 0; u < cu; ++u) {
      resid_w[u] = yw - p.hot_water.q[u] * correction[k];
      wu[u] = pi_u[u] * gc.log_use[u] + (pi_u[u] == 0.0 ? 0.0 : pi_u[u] * log_n(resid_w[u]));
    }
    const double lse_w = log_sum_exp(wu);
    total.add(lse_w);

    if (!want) continue;
    Parameters& g = *grad;

    d_sigma += gauss_sigma(resid_q) + gauss_sigma(resid_l);
    up_space[k] += resid_q * inv_var;
    up_hot[k] += resid_q * inv_var;
    up_loss[k] += (resid_q + resid_l) * inv_var;
    dy_loss[k] -= resid_l * inv_var;

    // Space mixture.
    {
      gamma = (wts.array() - lse_s).exp();
      omega_s.setZero();
      omega_a.setZero();
      omega_t.setZero();
      d_drive_l.setZero();
      double d_ar = 0.0;
      c = 0;
      for (Eigen::Index i = 0; i < cs; ++i)
        for (Eigen::Index j = 0; j < ct; ++j)
          for (Eigen::Index l = 0; l < ct; ++l, ++c) {
            const double gm = gamma[c];
            omega_s[i] += gm * pi_s[i];
            omega_a[j] += gm * pi_t[j];
            omega_t[l] += gm * pi_t[l];
            const double pi = pi_s[i] * pi_t[j] * pi_t[l];
            if (pi == 0.0) continue;
            const double gr = gm * pi * resid_s[c] * inv_var;
            d_sigma += gm * pi * gauss_sigma(resid_s[c]);
            d_ar += gr;
            g.active.eta[i] += gr * p.active.mu(j, d) * drive[l];
            g.active.mu(j, d) += gr * p.active.eta[i] * drive[l];
            d_drive_l[l] += gr * p.active.eta[i] * p.active.mu(j, d);
          }
      d_season_gate.col(k) += weighted_log_softmax_grad(omega_s, p_season.col(k));
      acc_time.col(static_cast<Eigen::Index>(ci)) += weighted_log_softmax_grad(omega_a, gc.p_time);
      acc_set.col(static_cast<Eigen::Index>(ci)) += weighted_log_softmax_grad(omega_t, gc.p_set);

      dy_space[k] -= d_ar;
      for (Eigen::Index j = 1; j <= na1 && k - j >= 0; ++j) {
        g.space.a[j - 1] += d_ar * y.space[k - j];
        dy_space[k - j] += d_ar * sp.a[j - 1];
      }
      for (Eigen::Index l = 0; l < ct; ++l) {
        const double dd = d_drive_l[l];
        if (dd == 0.0) continue;
        g.space.beta[0] += dd * s_gap[l];
        g.space.beta[1] += dd * s2[k];
        g.space.beta[2] += dd * s_wind[l];
        for (Eigen::Index m = 0; m < nb1; ++m) {
          const Eigen::Index t = lag_index(k, m);
          const double e = p.setpoint.zeta(l, day_of(t)) - x.ambient[t];
          g.space.b[0][m] += dd * sp.beta[0] * e;
          d_zeta_row(l, t) += dd * sp.beta[0] * sp.b[0][m];
        }
        for (Eigen::Index m = 0; m < nb2; ++m) g.space.b[1][m] += dd * sp.beta[1] * x.radiance[lag_index(k, m)];
        for (Eigen::Index m = 0; m < nb3; ++m) {
          const Eigen::Index t = lag_index(k, m);
          const double e = p.setpoint.zeta(l, day_of(t)) - x.ambient[t];
          g.space.b[2][m] += dd * sp.beta[2] * x.wind[t] * e;
          d_zeta_row(l, t) += dd * sp.beta[2] * sp.b[2][m] * x.wind[t];
        }
      }
    }

    // Hot-water mixture.
    for (Eigen::Index u = 0; u < cu; ++u) {
      omega_u[u] = std::exp(wu[u] - lse_w) * pi_u[u];
      if (pi_u[u] == 0.0) continue;
      const double gr = omega_u[u] * resid_w[u] * inv_var;
      d_sigma += omega_u[u] * gauss_sigma(resid_w[u]);
      g.hot_water.q[u] += gr * correction[k];
      g.hot_water.lambda += gr * p.hot_water.q[u] * x.seasonal_cosine[k];
      dy_hot[k] -= gr;
    }
    acc_use.col(static_cast<Eigen::Index>(ci)) += weighted_log_softmax_grad(omega_u, gc.p_use);
  }

  if (!want) return total.value();
  Parameters& g = *grad;
  g.noise_scale += d_sigma;

  // Targets that follow the parameters: each target is the load minus the
  // other two teacher-forced predictions, floored at zero, and the
  // predictions reuse earlier targets as AR lags. Reverse pass over rows.
  if (follow_) {
    for (Eigen::Index k = n - 1; k >= 0; --k) {
      for (Eigen::Index j = 1; j <= na1 && k + j < n; ++j) dy_space[k] += sp.a[j - 1] * up_space[k + j];
      for (Eigen::Index j = 1; j <= na2 && k + j < n; ++j) dy_loss[k] += ls.a[j - 1] * up_loss[k + j];
      const double q = x.load[k];
      const double ls_k = q - pred_hot[k] - pred_loss[k] > 0.0 ? dy_space[k] : 0.0;
      const double lw_k = q - pred_space[k] - pred_loss[k] > 0.0 ? dy_hot[k] : 0.0;
      const double ll_k = q - pred_space[k] - pred_hot[k] > 0.0 ? dy_loss[k] : 0.0;
      up_space[k] -= lw_k + ll_k;
      up_hot[k] -= ls_k + ll_k;
      up_loss[k] -= ls_k + lw_k;
    }
  }

  // Derivatives of the teacher-forced predictions, scaled by their upstream.
  Eigen::VectorXd d_setpoint = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double us = up_space[k], uw = up_hot[k], ul = up_loss[k];
    const std::size_t ci = cell_of[static_cast<std::size_t>(k)];
    const GateCell& gc = cells[ci];
    const int d = day_of(k);
    if (us != 0.0) {
      for (Eigen::Index j = 1; j <= na1 && k - j >= 0; ++j) g.space.a[j - 1] += us * y.space[k - j];
      const double active = alpha_s[k] * alpha_i[k];
      const double space_drive = sp.beta[0] * s1[k] + sp.beta[1] * s2[k] + sp.beta[2] * s3[k];
      const double d_active = us * space_drive;
      const double d_drive = us * active;
      for (Eigen::Index m = 0; m < nb1; ++m) {
        const Eigen::Index t = lag_index(k, m);
        g.space.b[0][m] += d_drive * sp.beta[0] * gap[t];
        d_setpoint[t] += d_drive * sp.beta[0] * sp.b[0][m];
      }
      for (Eigen::Index m = 0; m < nb2; ++m) g.space.b[1][m] += d_drive * sp.beta[1] * x.radiance[lag_index(k, m)];
      for (Eigen::Index m = 0; m < nb3; ++m) {
        const Eigen::Index t = lag_index(k, m);
        g.space.b[2][m] += d_drive * sp.beta[2] * x.wind[t] * gap[t];
        d_setpoint[t] += d_drive * sp.beta[2] * sp.b[2][m] * x.wind[t];
      }
      g.space.beta[0] += d_drive * s1[k];
      g.space.beta[1] += d_drive * s2[k];
      g.space.beta[2] += d_drive * s3[k];
      const double d_alpha_s = d_active * alpha_i[k];
      const double d_alpha_i = d_active * alpha_s[k];
      g.active.eta += d_alpha_s * p_season.col(k);
      g.active.mu.col(d) += d_alpha_i * gc.p_time;
      d_season_gate.col(k) += mixture_grad(d_alpha_s, p_season.col(k), p.active.eta);
      acc_time.col(static_cast<Eigen::Index>(ci)) += mixture_grad(d_alpha_i, gc.p_time, p.active.mu.col(d));
    }
    if (uw != 0.0) {
      g.hot_water.lambda += uw * demand[k] * x.seasonal_cosine[k];
      g.hot_water.q += uw * correction[k] * gc.p_use;
      acc_use.col(static_cast<Eigen::Index>(ci)) += mixture_grad(uw * correction[k], gc.p_use, p.hot_water.q);
    }
    if (ul != 0.0) {
      for (Eigen::Index j = 1; j <= na2 && k - j >= 0; ++j) g.loss.a[j - 1] += ul * y.loss[k - j];
      g.loss.beta += ul * s4[k];
      for (Eigen::Index m = 0; m < nb4; ++m) g.loss.b[m] += ul * ls.beta * x.pipe_gap[lag_index(k, m)];
    }
  }

  for (Eigen::Index t = 0; t < n; ++t) {
    const int d = day_of(t);
    g.setpoint.zeta.col(d) += d_zeta_row.col(t);
    const double season = x.burn_in_season[t];
    g.active.season_gate.params.col(0) += d_season_gate.col(t);
    g.active.season_gate.params.col(1) += d_season_gate.col(t) * season;
    if (d_setpoint[t] == 0.0) continue;
    const GateCell& gc = cell(t);
    g.setpoint.zeta.col(d) += d_setpoint[t] * gc.p_set;
    acc_set.col(static_cast<Eigen::Index>(cell_of[static_cast<std::size_t>(t)])) +=
        mixture_grad(d_setpoint[t], gc.p_set, p.setpoint.zeta.col(d));
  }
  for (int d = 0; d < 2; ++d)
    for (int h = 0; h < 24; ++h) {
      const Eigen::Index col = d * 24 + h;
      const auto r = x.fourier.row(h);
      g.setpoint.gate.weights[d] += acc_set.col(col) * r;
      g.active.time_gate.weights[d] += acc_time.col(col) * r;
      g.hot_water.gate.weights[d] += acc_use.col(col) * r;
    }
  return total.value();
}

double WeightedObjective::value(const Eigen::VectorXd& unconstrained) const {
  const Eigen::VectorXd c = layout_.to_constrained(unconstrained);
  Parameters p = Parameters::zeros(config_, sets_);
  layout_.unpack(c, p);
  const double v = log_likelihood(p, nullptr) + layout_.log_prior(c);
  if (!std::isfinite(v)) throw NonFiniteObjective("weighted log-posterior is not finite");
  return v;
}

double WeightedObjective::value_and_gradient(const Eigen::VectorXd& unconstrained, Eigen::VectorXd& gradient) const {
  const Eigen::VectorXd c = layout_.to_constrained(unconstrained);
  Parameters p = Parameters::zeros(config_, sets_);
  layout_.unpack(c, p);
  Parameters g = Parameters::zeros(config_, sets_);
  const double v = log_likelihood(p, &g) + layout_.log_prior(c);
  if (!std::isfinite(v)) throw NonFiniteObjective("weighted log-posterior is not finite");
  gradient = (layout_.pack(g) + layout_.log_prior_gradient(c)).cwiseProduct(layout_.jacobian_diagonal(unconstrained));
  if (!gradient.allFinite()) throw NonFiniteGradient("objective gradient is not finite");
  return v;
}

namespace {

WeightedObjective objective_at(const HeliosModel& m, const Dataset& ds, const PriorSpec& priors,
                               const ContextWeights& weights) {
  HeliosModel structure = m;
  structure.priors = priors;
  PreparedData data = prepare(m.config, ds);
  ComponentTargets targets = residual_targets(m.params, data);
  return WeightedObjective(structure, std::move(data), weights, std::move(targets));
}

}  // namespace

double weighted_log_posterior(const HeliosModel& m, const Dataset& ds, const PriorSpec& priors,
                              const ContextWeights& weights) {
  const WeightedObjective obj = objective_at(m, ds, priors, weights);
  return obj.value(obj.layout().to_unconstrained(obj.layout().pack(m.params)));
}

Eigen::VectorXd objective_gradient(const HeliosModel& m, const Dataset& ds, const PriorSpec& priors,
                                   const ContextWeights& weights) {
  const WeightedObjective obj = objective_at(m, ds, priors, weights);
  Eigen::VectorXd g;
  try {
    obj.value_and_gradient(obj.layout().to_unconstrained(obj.layout().pack(m.params)), g);
  } catch (const NonFiniteObjective& e) {
    throw NonFiniteGradient(e.what());
  }
  return g;
}

}  // namespace helios

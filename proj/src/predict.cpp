#include "helios/predict.hpp"

#include <algorithm>

#include "helios/error.hpp"
#include "helios/gates.hpp"

namespace helios {

void Decomposition::resize(Eigen::Index n) {
  timestamps.assign(static_cast<std::size_t>(n), 0);
  space = Eigen::VectorXd::Zero(n);
  hot_water = Eigen::VectorXd::Zero(n);
  loss = Eigen::VectorXd::Zero(n);
  total = Eigen::VectorXd::Zero(n);
}

void Decomposition::set(Eigen::Index i, Timestamp ts, double space_kw, double hot_water_kw, double loss_kw) {
  timestamps[static_cast<std::size_t>(i)] = ts;
  space[i] = space_kw;
  hot_water[i] = hot_water_kw;
  loss[i] = loss_kw;
  total[i] = space_kw + hot_water_kw + loss_kw;
}

void Decomposition::append(const Decomposition& other) {
  const Eigen::Index n = size();
  const Eigen::Index m = other.size();
  timestamps.insert(timestamps.end(), other.timestamps.begin(), other.timestamps.end());
  auto grow = [&](Eigen::VectorXd& v, const Eigen::VectorXd& w) {
    v.conservativeResize(n + m);
    v.tail(m) = w;
  };
  grow(space, other.space);
  grow(hot_water, other.hot_water);
  grow(loss, other.loss);
  grow(total, other.total);
}

namespace {

// Exogenous lag lookup; rows before the start repeat the first row.
inline Eigen::Index lag_index(Eigen::Index k, Eigen::Index j) { return std::max<Eigen::Index>(0, k - j); }

}  // namespace

StaticTerms static_terms(const Parameters& p, const PreparedData& data) {
  const Eigen::Index n = data.rows();
  StaticTerms t;
  t.setpoint.resize(n);
  t.active.resize(n);
  t.space_drive.resize(n);
  t.hot_water.resize(n);
  t.loss_drive.resize(n);

  for (Eigen::Index k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const int d = data.day[i];
    const Eigen::VectorXd r = data.fourier.row(data.hour[i]).transpose();

    const Eigen::VectorXd p_set = gates::softmax(p.setpoint.gate.weights[d] * r);
    t.setpoint[k] = p_set.dot(p.setpoint.zeta.col(d));

    const Eigen::VectorXd p_season =
        gates::softmax(gates::season_gate_logits(p.active.season_gate, data.burn_in_season[k]));
    const Eigen::VectorXd p_time = gates::softmax(p.active.time_gate.weights[d] * r);
    t.active[k] = p_season.dot(p.active.eta) * p_time.dot(p.active.mu.col(d));

    const Eigen::VectorXd p_use = gates::softmax(p.hot_water.gate.weights[d] * r);
    t.hot_water[k] = p_use.dot(p.hot_water.q) * (1.0 + p.hot_water.lambda * data.seasonal_cosine[k]);
  }

  for (Eigen::Index k = 0; k < n; ++k) {
    double gap_term = 0.0, solar_term = 0.0, wind_term = 0.0, loss_term = 0.0;
    for (Eigen::Index j = 0; j < p.space.b[0].size(); ++j) {
      const Eigen::Index l = lag_index(k, j);
      gap_term += p.space.b[0][j] * (t.setpoint[l] - data.ambient[l]);
    }
    for (Eigen::Index j = 0; j < p.space.b[1].size(); ++j) solar_term += p.space.b[1][j] * data.radiance[lag_index(k, j)];
    for (Eigen::Index j = 0; j < p.space.b[2].size(); ++j) {
      const Eigen::Index l = lag_index(k, j);
      wind_term += p.space.b[2][j] * data.wind[l] * (t.setpoint[l] - data.ambient[l]);
    }
    for (Eigen::Index j = 0; j < p.loss.b.size(); ++j) loss_term += p.loss.b[j] * data.pipe_gap[lag_index(k, j)];
    t.space_drive[k] = p.space.beta[0] * gap_term + p.space.beta[1] * solar_term + p.space.beta[2] * wind_term;
    t.loss_drive[k] = p.loss.beta * loss_term;
  }
  return t;
}

TeacherForcedPass teacher_forced_pass(const Parameters& p, const PreparedData& data, const StaticTerms& terms) {
  const Eigen::Index n = data.rows();
  TeacherForcedPass out;
  out.space.resize(n);
  out.hot_water = terms.hot_water;
  out.loss.resize(n);
  out.targets.space.resize(n);
  out.targets.hot_water.resize(n);
  out.targets.loss.resize(n);

  for (Eigen::Index k = 0; k < n; ++k) {
    double ar_space = 0.0, ar_loss = 0.0;
    for (Eigen::Index j = 1; j <= p.space.a.size() && k - j >= 0; ++j) ar_space += p.space.a[j - 1] * out.targets.space[k - j];
    for (Eigen::Index j = 1; j <= p.loss.a.size() && k - j >= 0; ++j) ar_loss += p.loss.a[j - 1] * out.targets.loss[k - j];
    const double space = ar_space + terms.active[k] * terms.space_drive[k];
    const double loss = ar_loss + terms.loss_drive[k];
    const double hot = terms.hot_water[k];
    const double q = data.load[k];
    out.space[k] = space;
    out.loss[k] = loss;
    out.targets.space[k] = std::max(0.0, q - hot - loss);
    out.targets.hot_water[k] = std::max(0.0, q - space - loss);
    out.targets.loss[k] = std::max(0.0, q - space - hot);
  }
  return out;
}

ComponentTargets residual_targets(const Parameters& p, const PreparedData& data) {
  return teacher_forced_pass(p, data, static_terms(p, data)).targets;
}

ComponentTargets residual_targets(const HeliosModel& m, const Dataset& ds) {
  return residual_targets(m.params, prepare(m.config, ds));
}

Decomposition forecast_from(const Parameters& p, const PreparedData& data, const StaticTerms& terms,
                            const ComponentTargets& targets, Eigen::Index origin, int horizon) {
  Decomposition out;
  out.resize(horizon);
  const Eigen::Index na_s = p.space.a.size();
  const Eigen::Index na_l = p.loss.a.size();
  // Feedback buffers: history targets followed by the model's own outputs.
  std::vector<double> space_hist, loss_hist;
  for (Eigen::Index j = std::max<Eigen::Index>(0, origin - na_s); j < origin; ++j) space_hist.push_back(targets.space[j]);
  for (Eigen::Index j = std::max<Eigen::Index>(0, origin - na_l); j < origin; ++j) loss_hist.push_back(targets.loss[j]);

  for (int s = 0; s < horizon; ++s) {
    const Eigen::Index k = origin + s;
    double ar_space = 0.0, ar_loss = 0.0;
    for (Eigen::Index j = 1; j <= na_s && static_cast<Eigen::Index>(space_hist.size()) - j >= 0; ++j)
      ar_space += p.space.a[j - 1] * space_hist[space_hist.size() - static_cast<std::size_t>(j)];
    for (Eigen::Index j = 1; j <= na_l && static_cast<Eigen::Index>(loss_hist.size()) - j >= 0; ++j)
      ar_loss += p.loss.a[j - 1] * loss_hist[loss_hist.size() - static_cast<std::size_t>(j)];
    const double space = std::max(0.0, ar_space + terms.active[k] * terms.space_drive[k]);
    const double loss = std::max(0.0, ar_loss + terms.loss_drive[k]);
    out.set(s, data.timestamp[static_cast<std::size_t>(k)], space, terms.hot_water[k], loss);
    space_hist.push_back(space);
    loss_hist.push_back(loss);
  }
  return out;
}

Decomposition predict_decomposed(const HeliosModel& m, const Dataset& ds, PredictionMode mode) {
  const auto warmup = static_cast<std::size_t>(m.config.warmup_rows());
  if (ds.size() <= warmup)
    throw InsufficientHistory("prediction needs more than " + std::to_string(warmup) + " rows, got " +
                              std::to_string(ds.size()));
  const PreparedData data = prepare(m.config, ds);
  const StaticTerms terms = static_terms(m.params, data);
  const Eigen::Index first = data.first_row;
  const Eigen::Index n = data.rows();

  if (mode == PredictionMode::Recursive) {
    const ComponentTargets none{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
    const Decomposition all = forecast_from(m.params, data, terms, none, 0, static_cast<int>(n));
    Decomposition out;
    out.resize(n - first);
    for (Eigen::Index k = first; k < n; ++k)
      out.set(k - first, all.timestamps[static_cast<std::size_t>(k)], all.space[k], all.hot_water[k], all.loss[k]);
    return out;
  }

  const TeacherForcedPass pass = teacher_forced_pass(m.params, data, terms);
  Decomposition out;
  out.resize(n - first);
  for (Eigen::Index k = first; k < n; ++k)
    out.set(k - first, data.timestamp[static_cast<std::size_t>(k)], std::max(0.0, pass.space[k]), pass.hot_water[k],
            std::max(0.0, pass.loss[k]));
  return out;
}

Decomposition forecast(const HeliosModel& m, const Dataset& history, int horizon, const Dataset& future) {
  if (horizon < 0) throw MissingExogenous("negative horizon");
  if (horizon == 0) {
    Decomposition empty;
    empty.resize(0);
    return empty;
  }
  if (future.size() < static_cast<std::size_t>(horizon))
    throw MissingExogenous("forecast horizon " + std::to_string(horizon) + " needs " + std::to_string(horizon) +
                           " exogenous rows, got " + std::to_string(future.size()));
  if (history.empty()) throw InsufficientHistory("forecast needs a non-empty history");
  const Dataset ahead = future.slice(0, static_cast<std::size_t>(horizon));
  if (ahead[0].calendar.timestamp != history[history.size() - 1].calendar.timestamp + kSecondsPerHour)
    throw MissingExogenous("exogenous rows must start one hour after the history");
  const Dataset combined = history.concat(ahead);
  const PreparedData data = prepare(m.config, combined);
  const StaticTerms terms = static_terms(m.params, data);
  const TeacherForcedPass pass = teacher_forced_pass(m.params, data, terms);
  return forecast_from(m.params, data, terms, pass.targets, static_cast<Eigen::Index>(history.size()), horizon);
}

}  // namespace helios

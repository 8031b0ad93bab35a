#include "helios/model.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "helios/error.hpp"

namespace helios {

// ---------------------------------------------------------------------------
// ModelConfig

int ModelConfig::warmup_rows() const {
  int lag = std::max(space_ar_order, loss_ar_order);
  for (int o : space_input_orders) lag = std::max(lag, o);
  lag = std::max(lag, loss_input_order);
  return std::max(season_window, lag);
}

void ModelConfig::validate() const {
  if (fourier.harmonics < 1) throw ConfigError("fourier.P must be >= 1");
  if (season_window < 1) throw ConfigError("season_window (M) must be >= 1");
  if (space_ar_order < 0 || loss_ar_order < 0) throw ConfigError("ARX output orders must be >= 0");
  for (int o : space_input_orders)
    if (o < 0) throw ConfigError("space heating input orders must be >= 0");
  if (loss_input_order < 0) throw ConfigError("loss input order must be >= 0");
  if (!(hot_water_peak_day >= 1.0 && hot_water_peak_day <= 366.0))
    throw ConfigError("hot_water_peak_day must lie in [1, 366]");
  ground.validate();
}

// ---------------------------------------------------------------------------
// Priors

double Prior::log_density(double x) const noexcept {
  const double z = (x - location) / scale;
  return -0.5 * z * z;
}

double Prior::log_density_derivative(double x) const noexcept { return -(x - location) / (scale * scale); }

double Prior::mean() const noexcept {
  if (family == PriorFamily::Normal) return location;
  const double alpha = -location / scale;
  const double pdf = std::exp(-0.5 * alpha * alpha) / std::sqrt(2.0 * std::numbers::pi);
  const double tail = 0.5 * std::erfc(alpha / std::numbers::sqrt2);
  return location + scale * pdf / tail;
}

void PriorSpec::validate(const contexts::ContextSets& sets) const {
  auto check = [](const Prior& p, const std::string& name) {
    if (!(p.scale > 0.0)) throw ConfigError("prior " + name + " must have a positive scale");
  };
  check(gate, "gate");
  check(gain, "gain");
  check(arx, "arx");
  check(lambda, "lambda");
  check(demand, "demand");
  check(noise, "noise");
  for (const auto& p : setpoint) check(p, "setpoint");
  for (const auto& p : season_activity) check(p, "season_activity");
  for (const auto& p : time_activity) check(p, "time_activity");
  if (setpoint.size() != sets.setpoint.size() || time_activity.size() != sets.setpoint.size())
    throw ConfigError("setpoint priors do not match the number of setpoint contexts");
  if (season_activity.size() != sets.season.size())
    throw ConfigError("season activity priors do not match the number of season contexts");
}

PriorSpec default_priors() { return default_priors(contexts::default_context_sets()); }

PriorSpec default_priors(const contexts::ContextSets& sets) {
  PriorSpec p;
  for (const auto& c : sets.setpoint.contexts) {
    if (c.name == "setback") {
      p.setpoint.push_back({PriorFamily::Normal, 16.0, 2.0});
      p.time_activity.push_back({PriorFamily::HalfNormal, 0.2, 0.2});
    } else if (c.name == "comfort") {
      p.setpoint.push_back({PriorFamily::Normal, 20.0, 2.0});
      p.time_activity.push_back({PriorFamily::HalfNormal, 0.8, 0.2});
    } else {
      p.setpoint.push_back({PriorFamily::Normal, 18.0, 2.0});
      p.time_activity.push_back({PriorFamily::HalfNormal, 0.5, 0.2});
    }
  }
  for (const auto& c : sets.season.contexts) {
    if (c.name == "hot")
      p.season_activity.push_back({PriorFamily::HalfNormal, 0.0, 0.1});
    else if (c.name == "cold")
      p.season_activity.push_back({PriorFamily::HalfNormal, 1.0, 0.1});
    else
      p.season_activity.push_back({PriorFamily::HalfNormal, 0.5, 0.1});
  }
  return p;
}

// ---------------------------------------------------------------------------
// Transforms

double softplus(double x) noexcept { return x > 30.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double inverse_softplus(double y) noexcept { return y > 30.0 ? y + std::log(-std::expm1(-y)) : std::log(std::expm1(y)); }

double logistic(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double logit(double p) noexcept { return std::log(p) - std::log1p(-p); }

// ---------------------------------------------------------------------------
// Parameters and layout

Parameters Parameters::zeros(const ModelConfig& cfg, const contexts::ContextSets& sets) {
  const auto ct = static_cast<int>(sets.setpoint.size());
  const auto cs = static_cast<int>(sets.season.size());
  const auto cu = static_cast<int>(sets.hot_water.size());
  Parameters p;
  p.setpoint.zeta = Eigen::MatrixXd::Zero(ct, 2);
  p.setpoint.gate = gates::TimeGatingNetwork(ct, cfg.fourier);
  p.active.eta = Eigen::VectorXd::Zero(cs);
  p.active.mu = Eigen::MatrixXd::Zero(ct, 2);
  p.active.season_gate = gates::SeasonGatingNetwork(cs);
  p.active.time_gate = gates::TimeGatingNetwork(ct, cfg.fourier);
  p.space.a = Eigen::VectorXd::Zero(cfg.space_ar_order);
  for (std::size_t i = 0; i < 3; ++i) p.space.b[i] = Eigen::VectorXd::Zero(cfg.space_input_orders[i] + 1);
  p.space.beta = {0.0, 0.0, 0.0};
  p.hot_water.q = Eigen::VectorXd::Zero(cu);
  p.hot_water.gate = gates::TimeGatingNetwork(cu, cfg.fourier);
  p.hot_water.lambda = 0.0;
  p.hot_water.peak_day = cfg.hot_water_peak_day;
  p.loss.a = Eigen::VectorXd::Zero(cfg.loss_ar_order);
  p.loss.b = Eigen::VectorXd::Zero(cfg.loss_input_order + 1);
  p.loss.beta = 0.0;
  p.loss.ground = cfg.ground;
  p.noise_scale = 0.0;
  return p;
}

template <typename Visitor>
void ParameterLayout::visit(Parameters& p, Visitor&& v) const {
  const auto& set_t = sets_.setpoint.contexts;
  const auto& set_s = sets_.season.contexts;
  const auto& set_u = sets_.hot_water.contexts;
  auto day = [](int d) { return d == 0 ? std::string("weekday") : std::string("weekend"); };
  auto gate = [&](gates::TimeGatingNetwork& net, const std::string& block, const auto& names) {
    for (int d = 0; d < 2; ++d)
      for (Eigen::Index c = 0; c < net.weights[d].rows(); ++c)
        for (Eigen::Index f = 0; f < net.weights[d].cols(); ++f)
          v(net.weights[d](c, f), Transform::Identity, gate_prior_, [&] {
            return block + "." + names[static_cast<std::size_t>(c)].name + "." + day(d) + "." + std::to_string(f);
          });
  };

  for (Eigen::Index c = 0; c < p.setpoint.zeta.rows(); ++c)
    for (int d = 0; d < 2; ++d)
      v(p.setpoint.zeta(c, d), Transform::Identity, priors_.setpoint[static_cast<std::size_t>(c)],
        [&] { return "setpoint.zeta." + set_t[static_cast<std::size_t>(c)].name + "." + day(d); });
  gate(p.setpoint.gate, "setpoint.gate", set_t);

  for (Eigen::Index c = 0; c < p.active.eta.size(); ++c)
    v(p.active.eta[c], Transform::Logistic, priors_.season_activity[static_cast<std::size_t>(c)],
      [&] { return "active.eta." + set_s[static_cast<std::size_t>(c)].name; });
  for (Eigen::Index c = 0; c < p.active.mu.rows(); ++c)
    for (int d = 0; d < 2; ++d)
      v(p.active.mu(c, d), Transform::Logistic, priors_.time_activity[static_cast<std::size_t>(c)],
        [&] { return "active.mu." + set_t[static_cast<std::size_t>(c)].name + "." + day(d); });
  for (Eigen::Index c = 0; c < p.active.season_gate.params.rows(); ++c)
    for (int k = 0; k < 2; ++k)
      v(p.active.season_gate.params(c, k), Transform::Identity, gate_prior_, [&] {
        return "active.season_gate." + set_s[static_cast<std::size_t>(c)].name + (k == 0 ? ".intercept" : ".slope");
      });
  gate(p.active.time_gate, "active.time_gate", set_t);

  for (Eigen::Index j = 0; j < p.space.a.size(); ++j)
    v(p.space.a[j], Transform::Softplus, priors_.arx, [&] { return "space.a." + std::to_string(j + 1); });
  for (std::size_t i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < p.space.b[i].size(); ++j)
      v(p.space.b[i][j], Transform::Softplus, priors_.arx,
        [&] { return "space.b" + std::to_string(i + 1) + "." + std::to_string(j); });
  for (std::size_t i = 0; i < 3; ++i)
    v(p.space.beta[i], Transform::Softplus, priors_.gain, [&] { return "space.beta" + std::to_string(i + 1); });

  for (Eigen::Index u = 0; u < p.hot_water.q.size(); ++u)
    v(p.hot_water.q[u], Transform::Softplus, priors_.demand,
      [&] { return "hot_water.q." + set_u[static_cast<std::size_t>(u)].name; });
  gate(p.hot_water.gate, "hot_water.gate", set_u);
  v(p.hot_water.lambda, Transform::Softplus, priors_.lambda, [] { return std::string("hot_water.lambda"); });

  for (Eigen::Index j = 0; j < p.loss.a.size(); ++j)
    v(p.loss.a[j], Transform::Softplus, priors_.arx, [&] { return "loss.a." + std::to_string(j + 1); });
  for (Eigen::Index j = 0; j < p.loss.b.size(); ++j)
    v(p.loss.b[j], Transform::Softplus, priors_.arx, [&] { return "loss.b4." + std::to_string(j); });
  v(p.loss.beta, Transform::Softplus, priors_.gain, [] { return std::string("loss.beta4"); });

  v(p.noise_scale, Transform::Softplus, priors_.noise, [] { return std::string("noise_scale"); });
}

ParameterLayout::ParameterLayout(const ModelConfig& cfg, const contexts::ContextSets& sets, const PriorSpec& priors)
    : config_(cfg), sets_(sets), priors_(priors), gate_prior_(priors.gate) {
  priors_.validate(sets_);
  Parameters shape = Parameters::zeros(config_, sets_);
  visit(shape, [&](double&, Transform t, const Prior& prior, auto&& name) {
    slots_.push_back({name(), t, prior});
  });
}

Eigen::VectorXd ParameterLayout::pack(const Parameters& p) const {
  Eigen::VectorXd out(size());
  Eigen::Index i = 0;
  visit(const_cast<Parameters&>(p), [&](double& x, Transform, const Prior&, auto&&) { out[i++] = x; });
  return out;
}

void ParameterLayout::unpack(const Eigen::VectorXd& values, Parameters& p) const {
  if (values.size() != size()) throw AlignmentMismatch("parameter vector has the wrong length");
  Eigen::Index i = 0;
  visit(p, [&](double& x, Transform, const Prior&, auto&&) { x = values[i++]; });
}

Eigen::VectorXd ParameterLayout::to_unconstrained(const Eigen::VectorXd& c) const {
  Eigen::VectorXd x(size());
  for (Eigen::Index i = 0; i < size(); ++i) {
    switch (slots_[static_cast<std::size_t>(i)].transform) {
      case Transform::Identity: x[i] = c[i]; break;
      case Transform::Softplus: x[i] = inverse_softplus(c[i]); break;
      case Transform::Logistic: x[i] = logit(c[i]); break;
    }
  }
  return x;
}

Eigen::VectorXd ParameterLayout::to_constrained(const Eigen::VectorXd& x) const {
  Eigen::VectorXd c(size());
  for (Eigen::Index i = 0; i < size(); ++i) {
    switch (slots_[static_cast<std::size_t>(i)].transform) {
      case Transform::Identity: c[i] = x[i]; break;
      case Transform::Softplus: c[i] = softplus(x[i]); break;
      case Transform::Logistic: c[i] = logistic(x[i]); break;
    }
  }
  return c;
}

Eigen::VectorXd ParameterLayout::jacobian_diagonal(const Eigen::VectorXd& x) const {
  Eigen::VectorXd j(size());
  for (Eigen::Index i = 0; i < size(); ++i) {
    switch (slots_[static_cast<std::size_t>(i)].transform) {
      case Transform::Identity: j[i] = 1.0; break;
      case Transform::Softplus: j[i] = logistic(x[i]); break;
      case Transform::Logistic: {
        const double s = logistic(x[i]);
        j[i] = s * (1.0 - s);
        break;
      }
    }
  }
  return j;
}

double ParameterLayout::log_prior(const Eigen::VectorXd& c) const {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < size(); ++i) acc += slots_[static_cast<std::size_t>(i)].prior.log_density(c[i]);
  return acc;
}

Eigen::VectorXd ParameterLayout::log_prior_gradient(const Eigen::VectorXd& c) const {
  Eigen::VectorXd g(size());
  for (Eigen::Index i = 0; i < size(); ++i)
    g[i] = slots_[static_cast<std::size_t>(i)].prior.log_density_derivative(c[i]);
  return g;
}

HeliosModel make_model(const ModelConfig& cfg, const contexts::ContextSets& sets, const PriorSpec& priors) {
  cfg.validate();
  sets.setpoint.validate();
  sets.season.validate();
  sets.hot_water.validate();
  HeliosModel m{cfg, sets, priors, Parameters::zeros(cfg, sets)};
  const ParameterLayout layout = m.layout();
  Eigen::VectorXd values(layout.size());
  for (Eigen::Index i = 0; i < layout.size(); ++i) {
    const auto& slot = layout.slots()[static_cast<std::size_t>(i)];
    double v = slot.prior.mean();
    if (slot.transform == Transform::Logistic) v = std::clamp(v, 0.01, 0.99);
    if (slot.transform == Transform::Softplus) v = std::max(v, 1e-6);
    values[i] = v;
  }
  layout.unpack(values, m.params);
  return m;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

nlohmann::json prior_json(const Prior& p) {
  return {{"family", p.family == PriorFamily::Normal ? "normal" : "half-normal"},
          {"location", p.location},
          {"scale", p.scale}};
}

Prior prior_from(const nlohmann::json& j) {
  Prior p;
  const auto fam = j.at("family").get<std::string>();
  if (fam == "normal")
    p.family = PriorFamily::Normal;
  else if (fam == "half-normal")
    p.family = PriorFamily::HalfNormal;
  else
    throw ConfigError("unknown prior family " + fam);
  p.location = j.at("location").get<double>();
  p.scale = j.at("scale").get<double>();
  return p;
}

}  // namespace

nlohmann::json to_json(const ModelConfig& cfg) {
  return {{"fourier_harmonics", cfg.fourier.harmonics},
          {"season_window", cfg.season_window},
          {"space_ar_order", cfg.space_ar_order},
          {"space_input_orders", cfg.space_input_orders},
          {"loss_ar_order", cfg.loss_ar_order},
          {"loss_input_order", cfg.loss_input_order},
          {"hot_water_peak_day", cfg.hot_water_peak_day},
          {"ground",
           {{"pipe_depth", cfg.ground.pipe_depth},
            {"mean_ambient", cfg.ground.mean_ambient},
            {"amplitude", cfg.ground.amplitude},
            {"phase_shift_days", cfg.ground.phase_shift_days},
            {"diffusivity", cfg.ground.diffusivity}}}};
}

ModelConfig model_config_from_json(const nlohmann::json& j, ModelConfig cfg) {
  try {
    cfg.fourier.harmonics = j.value("fourier_harmonics", cfg.fourier.harmonics);
    cfg.season_window = j.value("season_window", cfg.season_window);
    cfg.space_ar_order = j.value("space_ar_order", cfg.space_ar_order);
    if (j.contains("space_input_orders")) cfg.space_input_orders = j.at("space_input_orders").get<std::array<int, 3>>();
    cfg.loss_ar_order = j.value("loss_ar_order", cfg.loss_ar_order);
    cfg.loss_input_order = j.value("loss_input_order", cfg.loss_input_order);
    cfg.hot_water_peak_day = j.value("hot_water_peak_day", cfg.hot_water_peak_day);
    if (j.contains("ground")) {
      const auto& g = j.at("ground");
      cfg.ground.pipe_depth = g.value("pipe_depth", cfg.ground.pipe_depth);
      cfg.ground.mean_ambient = g.value("mean_ambient", cfg.ground.mean_ambient);
      cfg.ground.amplitude = g.value("amplitude", cfg.ground.amplitude);
      cfg.ground.phase_shift_days = g.value("phase_shift_days", cfg.ground.phase_shift_days);
      cfg.ground.diffusivity = g.value("diffusivity", cfg.ground.diffusivity);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed model config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

nlohmann::json to_json(const PriorSpec& p) {
  auto list = [](const std::vector<Prior>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v) a.push_back(prior_json(x));
    return a;
  };
  return {{"gate", prior_json(p.gate)},
          {"setpoint", list(p.setpoint)},
          {"season_activity", list(p.season_activity)},
          {"time_activity", list(p.time_activity)},
          {"gain", prior_json(p.gain)},
          {"arx", prior_json(p.arx)},
          {"lambda", prior_json(p.lambda)},
          {"demand", prior_json(p.demand)},
          {"noise", prior_json(p.noise)}};
}

PriorSpec prior_spec_from_json(const nlohmann::json& j, PriorSpec p) {
  try {
    auto list = [&](const char* key, std::vector<Prior>& out) {
      if (!j.contains(key)) return;
      out.clear();
      for (const auto& x : j.at(key)) out.push_back(prior_from(x));
    };
    auto one = [&](const char* key, Prior& out) {
      if (j.contains(key)) out = prior_from(j.at(key));
    };
    one("gate", p.gate);
    list("setpoint", p.setpoint);
    list("season_activity", p.season_activity);
    list("time_activity", p.time_activity);
    one("gain", p.gain);
    one("arx", p.arx);
    one("lambda", p.lambda);
    one("demand", p.demand);
    one("noise", p.noise);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed priors: ") + e.what());
  }
  return p;
}

nlohmann::json to_json(const HeliosModel& m) {
  const ParameterLayout layout = m.layout();
  const Eigen::VectorXd values = layout.pack(m.params);
  nlohmann::json params = nlohmann::json::object();
  for (Eigen::Index i = 0; i < layout.size(); ++i) params[layout.slots()[static_cast<std::size_t>(i)].name] = values[i];
  return {{"format", "helios-model"},
          {"version", kModelSchemaVersion},
          {"config", to_json(m.config)},
          {"contexts", contexts::to_json(m.contexts)},
          {"priors", to_json(m.priors)},
          {"parameters", params}};
}

HeliosModel model_from_json(const nlohmann::json& j) {
  if (!j.contains("version") || !j.at("version").is_number_integer())
    throw SchemaVersionMismatch("model file carries no integer version tag");
  const int version = j.at("version").get<int>();
  if (version != kModelSchemaVersion)
    throw SchemaVersionMismatch("model file version " + std::to_string(version) + ", expected " +
                                std::to_string(kModelSchemaVersion));
  try {
    HeliosModel m;
    m.config = model_config_from_json(j.at("config"));
    m.contexts = contexts::context_sets_from_json(j.at("contexts"));
    m.priors = prior_spec_from_json(j.at("priors"), default_priors(m.contexts));
    m.params = Parameters::zeros(m.config, m.contexts);
    const ParameterLayout layout = m.layout();
    Eigen::VectorXd values(layout.size());
    const auto& params = j.at("parameters");
    for (Eigen::Index i = 0; i < layout.size(); ++i)
      values[i] = params.at(layout.slots()[static_cast<std::size_t>(i)].name).get<double>();
    layout.unpack(values, m.params);
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed model file: ") + e.what());
  } catch (const ConfigError& e) {
    throw IoError(std::string("malformed model file: ") + e.what());
  }
}

void save_model(const HeliosModel& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << to_json(m).dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

HeliosModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cannot parse model file " + path + ": " + e.what());
  }
  return model_from_json(j);
}

}  // namespace helios

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "helios/components.hpp"
#include "helios/contexts.hpp"
#include "helios/features.hpp"

namespace helios {

/// Structural hyper-parameters shared by training and prediction.
struct ModelConfig {
  features::FourierConfig fourier{3};
  int season_window = 24 * 90;  // M
  int space_ar_order = 1;       // n_a1
  std::array<int, 3> space_input_orders{1, 1, 1};  // n_b1..n_b3
  int loss_ar_order = 1;        // n_a2
  int loss_input_order = 1;     // n_b4
  double hot_water_peak_day = 15.0;  // d_m
  features::GroundModelConfig ground;

  /// First row whose season index and lags are all defined.
  int warmup_rows() const;
  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Priors
// ---------------------------------------------------------------------------

enum class PriorFamily { Normal, HalfNormal };

/// normal(location, scale) or half-normal(location, scale): a normal kernel
/// truncated to the non-negative axis.
struct Prior {
  PriorFamily family = PriorFamily::Normal;
  double location = 0.0;
  double scale = 1.0;

  /// Unnormalised log density, -0.5 ((x - location) / scale)^2.
  double log_density(double x) const noexcept;
  double log_density_derivative(double x) const noexcept;
  /// Mean of the distribution (truncated mean for half-normal).
  double mean() const noexcept;

  bool operator==(const Prior&) const = default;
};

struct PriorSpec {
  Prior gate{PriorFamily::Normal, 0.0, 2.0};
  std::vector<Prior> setpoint;  // zeta, one per setpoint context
  std::vector<Prior> season_activity;  // eta, one per season context
  std::vector<Prior> time_activity;    // mu, one per setpoint context
  Prior gain{PriorFamily::HalfNormal, 0.0, 10.0};     // beta_1..beta_4
  Prior arx{PriorFamily::HalfNormal, 0.0, 1.0};       // a and b filter coefficients
  Prior lambda{PriorFamily::HalfNormal, 0.2, 0.05};
  Prior demand{PriorFamily::HalfNormal, 0.0, 10.0};   // q_u
  Prior noise{PriorFamily::HalfNormal, 0.0, 10.0};    // sigma

  /// Throws ConfigError: non-positive scale, or a block whose size does not match the contexts.
  void validate(const contexts::ContextSets& sets) const;
  bool operator==(const PriorSpec&) const = default;
};

/// Priors for the default context sets.
PriorSpec default_priors();
/// Priors matched to context names: setback/comfort, hot/cold. Unknown names
/// fall back to the midpoint of the known locations.
PriorSpec default_priors(const contexts::ContextSets& sets);

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

/// Every learnable quantity. Also used as the shape of a gradient.
struct Parameters {
  components::SetpointModel setpoint;
  components::ActiveHouseholdsModel active;
  components::SpaceHeatingARX space;
  components::HotWaterModel hot_water;
  components::PipingLossModel loss;
  double noise_scale = 1.0;  // sigma, kW

  /// Zero-valued blocks shaped for the given structure.
  static Parameters zeros(const ModelConfig& cfg, const contexts::ContextSets& sets);
};

enum class Transform { Identity, Softplus, Logistic };

/// One scalar slot of the flat parameter vector.
struct ParameterSlot {
  std::string name;
  Transform transform = Transform::Identity;
  Prior prior;
};

/// Fixed ordering between Parameters and flat vectors.
class ParameterLayout {
 public:
  ParameterLayout(const ModelConfig& cfg, const contexts::ContextSets& sets, const PriorSpec& priors);

  Eigen::Index size() const noexcept { return static_cast<Eigen::Index>(slots_.size()); }
  const std::vector<ParameterSlot>& slots() const noexcept { return slots_; }

  Eigen::VectorXd pack(const Parameters& p) const;
  /// Writes values into the learnable fields of `p`; fixed fields are kept.
  void unpack(const Eigen::VectorXd& values, Parameters& p) const;

  Eigen::VectorXd to_unconstrained(const Eigen::VectorXd& constrained) const;
  Eigen::VectorXd to_constrained(const Eigen::VectorXd& unconstrained) const;
  /// d(constrained)/d(unconstrained), elementwise.
  Eigen::VectorXd jacobian_diagonal(const Eigen::VectorXd& unconstrained) const;

  double log_prior(const Eigen::VectorXd& constrained) const;
  Eigen::VectorXd log_prior_gradient(const Eigen::VectorXd& constrained) const;

 private:
  template <typename Visitor>
  void visit(Parameters& p, Visitor&& v) const;

  ModelConfig config_;
  contexts::ContextSets sets_;
  PriorSpec priors_;
  Prior gate_prior_;
  std::vector<ParameterSlot> slots_;
};

double softplus(double x) noexcept;
double inverse_softplus(double y) noexcept;
double logistic(double x) noexcept;
double logit(double p) noexcept;

/// The composite heat-load model.
struct HeliosModel {
  ModelConfig config;
  contexts::ContextSets contexts;
  PriorSpec priors;
  Parameters params;

  ParameterLayout layout() const { return ParameterLayout(config, contexts, priors); }
};

/// Shapes a model and fills each parameter with its prior mean.
HeliosModel make_model(const ModelConfig& cfg, const contexts::ContextSets& sets, const PriorSpec& priors);

inline constexpr int kModelSchemaVersion = 1;

/// JSON document carrying every parameter, contexts, configs and priors.
void save_model(const HeliosModel& m, const std::string& path);
/// Errors: IoError (missing, unreadable, truncated), SchemaVersionMismatch.
HeliosModel load_model(const std::string& path);

nlohmann::json to_json(const HeliosModel& m);
HeliosModel model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ModelConfig& cfg);
ModelConfig model_config_from_json(const nlohmann::json& j, ModelConfig base = {});
nlohmann::json to_json(const PriorSpec& p);
PriorSpec prior_spec_from_json(const nlohmann::json& j, PriorSpec base);

}  // namespace helios

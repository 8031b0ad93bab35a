#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "helios/data.hpp"

namespace helios::contexts {

/// Half-open hour interval [start, end) on the 24 h clock. start > end wraps
/// past midnight, so {22, 6} covers 22..23 and 0..5.
struct HourInterval {
  int start = 0;
  int end = 24;

  bool contains(int hour) const noexcept;
  bool operator==(const HourInterval&) const = default;
};

struct SeasonThreshold {
  enum class Side { Above, Below };
  Side side = Side::Above;
  double value = 10.0;  // degC

  /// Strict comparison; NaN seasons never satisfy a threshold.
  bool contains(double season) const noexcept;
  bool operator==(const SeasonThreshold&) const = default;
};

/// Alpha-certain possibility distribution: weight 1 on the support and
/// 1 - alpha elsewhere. The support is the hour union intersected with the
/// season threshold; an absent part does not restrict.
struct PossibilityContext {
  std::string name;
  std::vector<HourInterval> hours;
  std::optional<SeasonThreshold> season;
  double certainty = 0.9;  // alpha

  bool in_support(int hour, DayType day, double season_index) const noexcept;
  bool operator==(const PossibilityContext&) const = default;
};

enum class Element { Setpoint, Season, HotWater };

const char* element_name(Element e) noexcept;
Element element_from_name(const std::string& name);

struct ContextSet {
  Element element = Element::Setpoint;
  std::vector<PossibilityContext> contexts;

  std::size_t size() const noexcept { return contexts.size(); }
  /// Throws ConfigError: fewer than two contexts, duplicate names, alpha outside [0, 1],
  /// or hour bounds outside [0, 24].
  void validate() const;
  bool operator==(const ContextSet&) const = default;
};

/// The three sets a model is trained with.
struct ContextSets {
  ContextSet setpoint;
  ContextSet season;
  ContextSet hot_water;

  bool operator==(const ContextSets&) const = default;
};

double possibility_weight(const PossibilityContext& ctx, int hour, DayType day, double season_index);

/// N x |C| matrix of possibility weights. Throws AlignmentMismatch when the
/// season vector length differs from the dataset.
Eigen::MatrixXd weight_matrix(const ContextSet& set, const Dataset& ds, const Eigen::VectorXd& season);

/// Rows whose weights are all zero (a sample outside every support with alpha = 1).
std::vector<Eigen::Index> all_zero_rows(const Eigen::MatrixXd& weights);

/// Expert defaults: setpoint {setback, comfort}, season {hot, cold},
/// hot water {night, waking-up, working-hours, after-work}.
ContextSet default_contexts(Element element, double certainty = 0.9);
ContextSets default_context_sets(double certainty = 0.9);

nlohmann::json to_json(const ContextSet& set);
ContextSet context_set_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ContextSets& sets);
ContextSets context_sets_from_json(const nlohmann::json& j);

}  // namespace helios::contexts

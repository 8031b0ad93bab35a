#include "helios/contexts.hpp"

#include <cmath>
#include <set>

#include "helios/error.hpp"

namespace helios::contexts {

bool HourInterval::contains(int hour) const noexcept {
  if (start <= end) return hour >= start && hour < end;
  return hour >= start || hour < end;
}

bool SeasonThreshold::contains(double s) const noexcept {
  if (std::isnan(s)) return false;
  return side == Side::Above ? s > value : s < value;
}

bool PossibilityContext::in_support(int hour, DayType /*day*/, double season_index) const noexcept {
  bool in_hours = hours.empty();
  for (const auto& iv : hours) in_hours = in_hours || iv.contains(hour);
  const bool in_season = !season || season->contains(season_index);
  return in_hours && in_season;
}

double possibility_weight(const PossibilityContext& ctx, int hour, DayType day, double season_index) {
  return ctx.in_support(hour, day, season_index) ? 1.0 : 1.0 - ctx.certainty;
}

const char* element_name(Element e) noexcept {
  switch (e) {
    case Element::Setpoint: return "T_set";
    case Element::Season: return "Season";
    case Element::HotWater: return "HotWater";
  }
  return "?";
}

Element element_from_name(const std::string& name) {
  if (name == "T_set") return Element::Setpoint;
  if (name == "Season") return Element::Season;
  if (name == "HotWater") return Element::HotWater;
  throw ConfigError("unknown context element: " + name);
}

void ContextSet::validate() const {
  const std::string where = std::string("contexts.") + element_name(element);
  if (contexts.size() < 2) throw ConfigError(where + " needs at least two contexts");
  std::set<std::string> names;
  for (const auto& c : contexts) {
    if (!names.insert(c.name).second) throw ConfigError(where + " has duplicate context name " + c.name);
    if (!(c.certainty >= 0.0 && c.certainty <= 1.0))
      throw ConfigError(where + "." + c.name + ".alpha must lie in [0, 1]");
    for (const auto& iv : c.hours)
      if (iv.start < 0 || iv.start > 24 || iv.end < 0 || iv.end > 24)
        throw ConfigError(where + "." + c.name + " hour interval outside [0, 24]");
  }
}

Eigen::MatrixXd weight_matrix(const ContextSet& set, const Dataset& ds, const Eigen::VectorXd& season) {
  if (static_cast<std::size_t>(season.size()) != ds.size())
    throw AlignmentMismatch("season series has " + std::to_string(season.size()) + " rows, dataset " +
                            std::to_string(ds.size()));
  const auto n = static_cast<Eigen::Index>(ds.size());
  Eigen::MatrixXd w(n, static_cast<Eigen::Index>(set.size()));
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& cal = ds[static_cast<std::size_t>(k)].calendar;
    for (std::size_t c = 0; c < set.size(); ++c)
      w(k, static_cast<Eigen::Index>(c)) = possibility_weight(set.contexts[c], cal.hour, cal.day_type, season[k]);
  }
  return w;
}

std::vector<Eigen::Index> all_zero_rows(const Eigen::MatrixXd& weights) {
  std::vector<Eigen::Index> rows;
  for (Eigen::Index k = 0; k < weights.rows(); ++k)
    if ((weights.row(k).array() == 0.0).all()) rows.push_back(k);
  return rows;
}

ContextSet default_contexts(Element element, double certainty) {
  ContextSet set;
  set.element = element;
  auto hours = [&](std::string name, std::vector<HourInterval> iv) {
    PossibilityContext c;
    c.name = std::move(name);
    c.hours = std::move(iv);
    c.certainty = certainty;
    return c;
  };
  switch (element) {
    case Element::Setpoint:
      set.contexts = {hours("setback", {{22, 6}, {9, 18}}), hours("comfort", {{4, 10}, {16, 24}})};
      break;
    case Element::Season: {
      PossibilityContext hot{"hot", {}, SeasonThreshold{SeasonThreshold::Side::Above, 10.0}, certainty};
      PossibilityContext cold{"cold", {}, SeasonThreshold{SeasonThreshold::Side::Below, 10.0}, certainty};
      set.contexts = {hot, cold};
      break;
    }
    case Element::HotWater:
      set.contexts = {hours("night", {{22, 6}}), hours("waking-up", {{4, 10}}),
                      hours("working-hours", {{9, 18}}), hours("after-work", {{16, 24}})};
      break;
  }
  return set;
}

ContextSets default_context_sets(double certainty) {
  return {default_contexts(Element::Setpoint, certainty), default_contexts(Element::Season, certainty),
          default_contexts(Element::HotWater, certainty)};
}

nlohmann::json to_json(const ContextSet& set) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : set.contexts) {
    nlohmann::json j;
    j["name"] = c.name;
    j["alpha"] = c.certainty;
    nlohmann::json hrs = nlohmann::json::array();
    for (const auto& iv : c.hours) hrs.push_back({iv.start, iv.end});
    j["hours"] = hrs;
    if (c.season)
      j["season"] = {{c.season->side == SeasonThreshold::Side::Above ? "above" : "below", c.season->value}};
    list.push_back(j);
  }
  return {{"element", element_name(set.element)}, {"contexts", list}};
}

ContextSet context_set_from_json(const nlohmann::json& j) {
  try {
    ContextSet set;
    set.element = element_from_name(j.at("element").get<std::string>());
    for (const auto& jc : j.at("contexts")) {
      PossibilityContext c;
      c.name = jc.at("name").get<std::string>();
      c.certainty = jc.value("alpha", 0.9);
      if (jc.contains("hours"))
        for (const auto& iv : jc.at("hours")) c.hours.push_back({iv.at(0).get<int>(), iv.at(1).get<int>()});
      if (jc.contains("season")) {
        const auto& s = jc.at("season");
        if (s.contains("above"))
          c.season = SeasonThreshold{SeasonThreshold::Side::Above, s.at("above").get<double>()};
        else if (s.contains("below"))
          c.season = SeasonThreshold{SeasonThreshold::Side::Below, s.at("below").get<double>()};
        else
          throw ConfigError("season threshold needs 'above' or 'below'");
      }
      set.contexts.push_back(std::move(c));
    }
    set.validate();
    return set;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed context set: ") + e.what());
  }
}

nlohmann::json to_json(const ContextSets& sets) {
  return {{"T_set", to_json(sets.setpoint)}, {"Season", to_json(sets.season)}, {"HotWater", to_json(sets.hot_water)}};
}

ContextSets context_sets_from_json(const nlohmann::json& j) {
  try {
    return {context_set_from_json(j.at("T_set")), context_set_from_json(j.at("Season")),
            context_set_from_json(j.at("HotWater"))};
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed contexts: ") + e.what());
  }
}

}  // namespace helios::contexts

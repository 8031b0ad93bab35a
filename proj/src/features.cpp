#include "helios/features.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "helios/error.hpp"

namespace helios::features {

Eigen::MatrixXd fourier_table(const FourierConfig& cfg) {
  Eigen::MatrixXd table(24, cfg.dimension());
  for (int h = 0; h < 24; ++h) table.row(h) = fourier_features(h, cfg).transpose();
  return table;
}

double season_index(std::span<const double> history, int window) {
  if (window <= 0 || history.size() < static_cast<std::size_t>(window))
    throw InsufficientHistory("season index needs " + std::to_string(window) + " samples, got " +
                              std::to_string(history.size()));
  const auto tail = history.subspan(history.size() - static_cast<std::size_t>(window));
  return std::accumulate(tail.begin(), tail.end(), 0.0) / window;
}

Eigen::VectorXd season_series(const Eigen::VectorXd& ambient, int window) {
  const Eigen::Index n = ambient.size();
  Eigen::VectorXd s = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::quiet_NaN());
  if (window <= 0) return s;
  long double sum = 0.0L;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k >= window) s[k] = static_cast<double>(sum / window);
    sum += ambient[k];
    if (k >= window) sum -= ambient[k - window];
  }
  return s;
}

void GroundModelConfig::validate() const {
  if (!(pipe_depth >= 0.0)) throw ConfigError("ground.pipe_depth must be >= 0");
  if (!(amplitude >= 0.0)) throw ConfigError("ground.amplitude must be >= 0");
  if (!(diffusivity > 0.0)) throw ConfigError("ground.diffusivity must be > 0");
}

GroundModelConfig estimate_ground_config(const Dataset& train, GroundModelConfig base) {
  if (train.empty()) return base;
  std::map<std::int64_t, std::pair<double, int>> daily;
  double total = 0.0;
  for (const Row& r : train.rows()) {
    const auto day = r.calendar.timestamp / 86400 - (r.calendar.timestamp % 86400 < 0 ? 1 : 0);
    auto& acc = daily[day];
    acc.first += r.weather.ambient_temperature;
    acc.second += 1;
    total += r.weather.ambient_temperature;
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& [day, acc] : daily) {
    const double mean = acc.first / acc.second;
    lo = std::min(lo, mean);
    hi = std::max(hi, mean);
  }
  base.mean_ambient = total / static_cast<double>(train.size());
  base.amplitude = 0.5 * (hi - lo);
  return base;
}

}  // namespace helios::features

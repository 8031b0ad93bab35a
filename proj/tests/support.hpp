#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "helios/data.hpp"

namespace helios::testing {

// 2018-01-01T00:00:00Z
inline constexpr Timestamp kJan2018 = 1514764800;

/// Small hourly dataset with plausible weather and a load that reacts to it.
inline Dataset random_dataset(std::size_t n, unsigned seed, Timestamp start = kJan2018) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Row> rows;
  rows.reserve(n);
  const HolidayCalendar none;
  for (std::size_t k = 0; k < n; ++k) {
    Row r;
    r.calendar = derive_calendar(start + static_cast<Timestamp>(k) * kSecondsPerHour, none);
    const double hour = r.calendar.hour;
    r.weather.ambient_temperature = 10.0 + 4.0 * std::sin(2.0 * std::numbers::pi * hour / 24.0) + 3.0 * noise(rng);
    r.weather.global_radiance = std::max(0.0, 300.0 * std::sin(std::numbers::pi * (hour - 6.0) / 12.0)) * unit(rng);
    r.weather.wind_speed = 2.0 + 3.0 * unit(rng);
    r.substation.supply_temperature = 75.0 + noise(rng);
    r.substation.return_temperature = 45.0 + noise(rng);
    r.substation.heat_load = std::max(0.0, 60.0 - 2.5 * r.weather.ambient_temperature + 5.0 * noise(rng));
    rows.push_back(r);
  }
  return Dataset(std::move(rows));
}

}  // namespace helios::testing

#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace helios {

/// UTC epoch seconds.
using Timestamp = std::int64_t;

inline constexpr Timestamp kSecondsPerHour = 3600;

enum class DayType : int { Weekday = 1, WeekendHoliday = 2 };

/// Index 0 for weekdays, 1 for weekends and holidays.
inline constexpr int day_index(DayType d) noexcept { return static_cast<int>(d) - 1; }

struct CalendarFeatures {
  int hour = 0;  // 0..23
  DayType day_type = DayType::Weekday;
  int day_of_year = 1;  // 1..366
  Timestamp timestamp = 0;

  bool operator==(const CalendarFeatures&) const = default;
};

struct WeatherRecord {
  double ambient_temperature = 0.0;  // degC
  double global_radiance = 0.0;      // W/m2
  double wind_speed = 0.0;           // m/s

  bool operator==(const WeatherRecord&) const = default;
};

struct SubstationRecord {
  double heat_load = 0.0;           // kW
  double supply_temperature = 0.0;  // degC
  double return_temperature = 0.0;  // degC

  bool operator==(const SubstationRecord&) const = default;
};

struct Row {
  CalendarFeatures calendar;
  WeatherRecord weather;
  SubstationRecord substation;

  bool operator==(const Row&) const = default;
};

/// Set of holiday dates, stored as days since 1970-01-01 (UTC).
class HolidayCalendar {
 public:
  HolidayCalendar() = default;

  /// Accepts ISO dates `YYYY-MM-DD`. Throws ConfigError on malformed input.
  static HolidayCalendar from_iso_dates(const std::vector<std::string>& dates);

  void add(std::int64_t days_since_epoch) { days_.insert(days_since_epoch); }
  bool contains(std::int64_t days_since_epoch) const { return days_.count(days_since_epoch) > 0; }
  std::vector<std::string> iso_dates() const;
  bool empty() const noexcept { return days_.empty(); }

 private:
  std::set<std::int64_t> days_;
};

/// h, d_y from the UTC calendar; day type 2 on Saturdays, Sundays and holidays.
CalendarFeatures derive_calendar(Timestamp timestamp, const HolidayCalendar& holidays);

/// Parses epoch seconds or ISO-8601 (`YYYY-MM-DD[T ]HH:MM[:SS][Z|+00:00]`).
bool parse_timestamp(const std::string& text, Timestamp& out);
std::string format_timestamp(Timestamp ts);

/// Hourly time series of weather, substation measurements and calendar features.
/// Immutable after construction. Timestamps are strictly increasing; gaps are
/// allowed but recorded.
class Dataset {
 public:
  Dataset() = default;
  /// Throws NonMonotonicTimestamps unless rows are strictly increasing in time.
  explicit Dataset(std::vector<Row> rows, std::vector<std::string> warnings = {});

  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }
  const Row& operator[](std::size_t i) const { return rows_[i]; }
  std::span<const Row> rows() const noexcept { return rows_; }

  /// Timestamps missing between the first and last row (hourly sampling).
  const std::vector<Timestamp>& gaps() const noexcept { return gaps_; }
  bool contiguous() const noexcept { return gaps_.empty(); }
  /// Data quality notes collected at construction or ingestion.
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Throws DatasetHasGaps when the series is not contiguous.
  void require_contiguous(const char* operation) const;

  Dataset slice(std::size_t begin, std::size_t end) const;
  /// Appends `later` after this dataset; later must start after this one ends.
  Dataset concat(const Dataset& later) const;

  Eigen::VectorXd ambient_temperature() const;
  Eigen::VectorXd heat_load() const;

 private:
  std::vector<Row> rows_;
  std::vector<Timestamp> gaps_;
  std::vector<std::string> warnings_;
};

/// Maps logical fields to CSV header names.
struct CsvSchema {
  std::string timestamp = "timestamp";
  std::string ambient_temperature = "T_a";
  std::string global_radiance = "G";
  std::string wind_speed = "V_w";
  std::string heat_load = "Q";
  std::string supply_temperature = "T_s";
  std::string return_temperature = "T_r";
};

/// Reads a header-first CSV. Rows are sorted by timestamp; gaps and T_s < T_r
/// rows are reported as warnings.
/// Errors: IoError, MissingColumn, UnparsableRow, NonMonotonicTimestamps.
Dataset ingest_csv(const std::string& path, const CsvSchema& schema = {},
                   const HolidayCalendar& holidays = {});
Dataset ingest_csv_stream(std::istream& in, const CsvSchema& schema = {},
                          const HolidayCalendar& holidays = {});

/// Writes the dataset with the schema's header names; numbers round-trip exactly.
void write_csv(const Dataset& ds, const std::string& path, const CsvSchema& schema = {});
void write_csv_stream(const Dataset& ds, std::ostream& out, const CsvSchema& schema = {});

/// Chronological split: rows strictly before `boundary` go to the first half.
/// Throws BoundaryOutOfRange when boundary is after the last row.
std::pair<Dataset, Dataset> split_train_test(const Dataset& ds, Timestamp boundary);

}  // namespace helios

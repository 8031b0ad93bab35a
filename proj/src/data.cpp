#include "helios/data.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "helios/csv.hpp"
#include "helios/error.hpp"

namespace helios {

namespace {

using namespace std::chrono;

constexpr Timestamp kSecondsPerDay = 86400;

Timestamp floor_div(Timestamp a, Timestamp b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

bool parse_int(const std::string& s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  int v = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    v = v * 10 + (s[i] - '0');
  }
  out = v;
  return true;
}

bool parse_iso_date(const std::string& s, std::int64_t& days) {
  int y = 0, m = 0, d = 0;
  if (s.size() < 10 || s[4] != '-' || s[7] != '-') return false;
  if (!parse_int(s, 0, 4, y) || !parse_int(s, 5, 2, m) || !parse_int(s, 8, 2, d)) return false;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return false;
  days = sys_days{ymd}.time_since_epoch().count();
  return true;
}

std::string iso_date(std::int64_t days) {
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

}  // namespace

HolidayCalendar HolidayCalendar::from_iso_dates(const std::vector<std::string>& dates) {
  HolidayCalendar cal;
  for (const auto& s : dates) {
    std::int64_t days = 0;
    if (s.size() != 10 || !parse_iso_date(s, days)) throw ConfigError("invalid holiday date: " + s);
    cal.add(days);
  }
  return cal;
}

std::vector<std::string> HolidayCalendar::iso_dates() const {
  std::vector<std::string> out;
  out.reserve(days_.size());
  for (auto d : days_) out.push_back(iso_date(d));
  return out;
}

CalendarFeatures derive_calendar(Timestamp timestamp, const HolidayCalendar& holidays) {
  const std::int64_t days = floor_div(timestamp, kSecondsPerDay);
  const sys_days date{std::chrono::days{days}};
  const year_month_day ymd{date};
  const sys_days jan1{ymd.year() / January / 1};
  const unsigned wd = weekday{date}.c_encoding();  // 0 = Sunday

  CalendarFeatures cal;
  cal.timestamp = timestamp;
  cal.hour = static_cast<int>((timestamp - days * kSecondsPerDay) / kSecondsPerHour);
  cal.day_of_year = static_cast<int>((date - jan1).count()) + 1;
  const bool weekend = wd == 0 || wd == 6;
  cal.day_type = (weekend || holidays.contains(days)) ? DayType::WeekendHoliday : DayType::Weekday;
  return cal;
}

bool parse_timestamp(const std::string& raw, Timestamp& out) {
  std::string s = raw;
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
  if (s.empty()) return false;

  const bool numeric = std::all_of(s.begin() + (s[0] == '-' ? 1 : 0), s.end(),
                                   [](char c) { return c >= '0' && c <= '9'; }) &&
                       s.size() > (s[0] == '-' ? 1u : 0u);
  if (numeric) {
    try {
      std::size_t used = 0;
      out = std::stoll(s, &used);
      return used == s.size();
    } catch (...) {
      return false;
    }
  }

  std::int64_t days = 0;
  if (!parse_iso_date(s, days)) return false;
  int hh = 0, mm = 0, ss = 0;
  std::size_t pos = 10;
  if (pos < s.size()) {
    if (s[pos] != 'T' && s[pos] != ' ') return false;
    if (!parse_int(s, pos + 1, 2, hh) || s.size() < pos + 6 || s[pos + 3] != ':' ||
        !parse_int(s, pos + 4, 2, mm))
      return false;
    pos += 6;
    if (pos < s.size() && s[pos] == ':') {
      if (!parse_int(s, pos + 1, 2, ss)) return false;
      pos += 3;
    }
    const std::string zone = s.substr(pos);
    if (!(zone.empty() || zone == "Z" || zone == "+00:00" || zone == "+0000")) return false;
  }
  if (hh > 23 || mm > 59 || ss > 60) return false;
  out = days * kSecondsPerDay + hh * kSecondsPerHour + mm * 60 + ss;
  return true;
}

std::string format_timestamp(Timestamp ts) {
  const std::int64_t days = floor_div(ts, kSecondsPerDay);
  const Timestamp rem = ts - days * kSecondsPerDay;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%sT%02d:%02d:%02dZ", iso_date(days).c_str(),
                static_cast<int>(rem / 3600), static_cast<int>((rem / 60) % 60),
                static_cast<int>(rem % 60));
  return buf;
}

Dataset::Dataset(std::vector<Row> rows, std::vector<std::string> warnings)
    : rows_(std::move(rows)), warnings_(std::move(warnings)) {
  for (std::size_t i = 1; i < rows_.size(); ++i) {
    const Timestamp prev = rows_[i - 1].calendar.timestamp;
    const Timestamp cur = rows_[i].calendar.timestamp;
    if (cur <= prev)
      throw NonMonotonicTimestamps("timestamps not strictly increasing at row " + std::to_string(i));
    for (Timestamp t = prev + kSecondsPerHour; t < cur; t += kSecondsPerHour) gaps_.push_back(t);
  }
}

void Dataset::require_contiguous(const char* operation) const {
  if (!gaps_.empty())
    throw DatasetHasGaps(std::string(operation) + " requires a contiguous dataset; first gap at " +
                         format_timestamp(gaps_.front()));
}

Dataset Dataset::slice(std::size_t begin, std::size_t end) const {
  end = std::min(end, rows_.size());
  begin = std::min(begin, end);
  return Dataset(std::vector<Row>(rows_.begin() + static_cast<std::ptrdiff_t>(begin),
                                  rows_.begin() + static_cast<std::ptrdiff_t>(end)));
}

Dataset Dataset::concat(const Dataset& later) const {
  std::vector<Row> rows = rows_;
  rows.insert(rows.end(), later.rows_.begin(), later.rows_.end());
  return Dataset(std::move(rows));
}

Eigen::VectorXd Dataset::ambient_temperature() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(rows_.size()));
  for (std::size_t i = 0; i < rows_.size(); ++i) v[static_cast<Eigen::Index>(i)] = rows_[i].weather.ambient_temperature;
  return v;
}

Eigen::VectorXd Dataset::heat_load() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(rows_.size()));
  for (std::size_t i = 0; i < rows_.size(); ++i) v[static_cast<Eigen::Index>(i)] = rows_[i].substation.heat_load;
  return v;
}

Dataset ingest_csv(const std::string& path, const CsvSchema& schema, const HolidayCalendar& holidays) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return ingest_csv_stream(in, schema, holidays);
}

Dataset ingest_csv_stream(std::istream& in, const CsvSchema& schema, const HolidayCalendar& holidays) {
  const auto records = csv::read(in);
  if (records.empty()) throw MissingColumn(schema.timestamp);

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < records[0].fields.size(); ++i) index.emplace(records[0].fields[i], i);
  auto column = [&](const std::string& name) {
    const auto it = index.find(name);
    if (it == index.end()) throw MissingColumn(name);
    return it->second;
  };
  const std::size_t c_ts = column(schema.timestamp);
  const std::size_t c_ta = column(schema.ambient_temperature);
  const std::size_t c_g = column(schema.global_radiance);
  const std::size_t c_vw = column(schema.wind_speed);
  const std::size_t c_q = column(schema.heat_load);
  const std::size_t c_ts_supply = column(schema.supply_temperature);
  const std::size_t c_tr = column(schema.return_temperature);

  std::vector<Row> rows;
  std::vector<std::string> warnings;
  rows.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    auto field = [&](std::size_t c, const std::string& name) -> const std::string& {
      if (c >= rec.fields.size()) throw UnparsableRow(rec.line, "missing field " + name);
      return rec.fields[c];
    };
    auto number = [&](std::size_t c, const std::string& name) {
      double v = 0.0;
      if (!csv::parse_double(field(c, name), v))
        throw UnparsableRow(rec.line, "bad value for " + name + ": '" + field(c, name) + "'");
      return v;
    };
    Timestamp ts = 0;
    if (!parse_timestamp(field(c_ts, schema.timestamp), ts))
      throw UnparsableRow(rec.line, "bad timestamp '" + field(c_ts, schema.timestamp) + "'");

    Row row;
    row.calendar = derive_calendar(ts, holidays);
    row.weather.ambient_temperature = number(c_ta, schema.ambient_temperature);
    row.weather.global_radiance = number(c_g, schema.global_radiance);
    row.weather.wind_speed = number(c_vw, schema.wind_speed);
    row.substation.heat_load = number(c_q, schema.heat_load);
    row.substation.supply_temperature = number(c_ts_supply, schema.supply_temperature);
    row.substation.return_temperature = number(c_tr, schema.return_temperature);
    if (row.weather.global_radiance < 0.0) throw UnparsableRow(rec.line, "negative radiance");
    if (row.weather.wind_speed < 0.0) throw UnparsableRow(rec.line, "negative wind speed");
    if (row.substation.heat_load < 0.0) throw UnparsableRow(rec.line, "negative heat load");
    if (row.substation.supply_temperature < row.substation.return_temperature)
      warnings.push_back("line " + std::to_string(rec.line) + ": supply temperature below return temperature");
    rows.push_back(row);
  }

  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.calendar.timestamp < b.calendar.timestamp;
  });
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].calendar.timestamp == rows[i - 1].calendar.timestamp)
      throw NonMonotonicTimestamps("duplicate timestamp " + format_timestamp(rows[i].calendar.timestamp));

  Dataset probe(rows);
  for (Timestamp gap : probe.gaps()) warnings.push_back("gap: missing " + format_timestamp(gap));
  return Dataset(std::move(rows), std::move(warnings));
}

void write_csv(const Dataset& ds, const std::string& path, const CsvSchema& schema) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  write_csv_stream(ds, out, schema);
  if (!out) throw IoError("write failed: " + path);
}

void write_csv_stream(const Dataset& ds, std::ostream& out, const CsvSchema& schema) {
  csv::write_row(out, {schema.timestamp, schema.ambient_temperature, schema.global_radiance,
                       schema.wind_speed, schema.heat_load, schema.supply_temperature,
                       schema.return_temperature});
  for (const Row& r : ds.rows()) {
    csv::write_row(out, {format_timestamp(r.calendar.timestamp),
                         csv::format_double(r.weather.ambient_temperature),
                         csv::format_double(r.weather.global_radiance),
                         csv::format_double(r.weather.wind_speed),
                         csv::format_double(r.substation.heat_load),
                         csv::format_double(r.substation.supply_temperature),
                         csv::format_double(r.substation.return_temperature)});
  }
}

std::pair<Dataset, Dataset> split_train_test(const Dataset& ds, Timestamp boundary) {
  if (ds.empty() || boundary > ds[ds.size() - 1].calendar.timestamp)
    throw BoundaryOutOfRange("split boundary " + format_timestamp(boundary) + " is after the last row");
  const auto rows = ds.rows();
  const auto it = std::lower_bound(rows.begin(), rows.end(), boundary,
                                   [](const Row& r, Timestamp b) { return r.calendar.timestamp < b; });
  const auto cut = static_cast<std::size_t>(it - rows.begin());
  return {ds.slice(0, cut), ds.slice(cut, ds.size())};
}

}  // namespace helios

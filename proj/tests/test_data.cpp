#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "helios/csv.hpp"
#include "helios/data.hpp"
#include "helios/error.hpp"
#include "support.hpp"

using namespace helios;
using testing::kJan2018;

TEST_CASE("calendar features of known dates") {
  const HolidayCalendar none;
  const auto monday = derive_calendar(kJan2018 + 13 * kSecondsPerHour, none);
  CHECK(monday.hour == 13);
  CHECK(monday.day_of_year == 1);
  CHECK(monday.day_type == DayType::Weekday);

  // 2018-01-06 is a Saturday, 2018-12-31 the last day of a non-leap year.
  CHECK(derive_calendar(kJan2018 + 5 * 24 * kSecondsPerHour, none).day_type == DayType::WeekendHoliday);
  CHECK(derive_calendar(kJan2018 + 364 * 24 * kSecondsPerHour + 23 * kSecondsPerHour, none).day_of_year == 365);

  // 2020-12-31 in a leap year.
  Timestamp ts = 0;
  REQUIRE(parse_timestamp("2020-12-31T05:00:00Z", ts));
  CHECK(derive_calendar(ts, none).day_of_year == 366);
}

TEST_CASE("holidays turn weekdays into day type 2") {
  const auto holidays = HolidayCalendar::from_iso_dates({"2018-01-02"});
  CHECK(derive_calendar(kJan2018 + 30 * kSecondsPerHour, holidays).day_type == DayType::WeekendHoliday);
  CHECK(derive_calendar(kJan2018 + 2 * 24 * kSecondsPerHour, holidays).day_type == DayType::Weekday);
  CHECK(holidays.iso_dates() == std::vector<std::string>{"2018-01-02"});
  CHECK_THROWS_AS(HolidayCalendar::from_iso_dates({"2018-13-01"}), ConfigError);
}

TEST_CASE("timestamps parse in several forms and format as ISO") {
  Timestamp a = 0, b = 0, c = 0, d = 0;
  CHECK(parse_timestamp("2018-01-01T00:00:00Z", a));
  CHECK(parse_timestamp("2018-01-01 00:00", b));
  CHECK(parse_timestamp("1514764800", c));
  CHECK(parse_timestamp("2018-01-01T00:00:00+00:00", d));
  CHECK(a == kJan2018);
  CHECK(b == kJan2018);
  CHECK(c == kJan2018);
  CHECK(d == kJan2018);
  CHECK(format_timestamp(kJan2018 + 3600) == "2018-01-01T01:00:00Z");
  Timestamp bad = 0;
  CHECK_FALSE(parse_timestamp("yesterday", bad));
  CHECK_FALSE(parse_timestamp("2018-02-30T00:00:00Z", bad));
}

TEST_CASE("csv reader handles quotes, CRLF and embedded newlines") {
  std::istringstream in("a,b\r\n\"x,1\",\"he said \"\"hi\"\"\"\r\n\n\"multi\nline\",2\n");
  const auto records = csv::read(in);
  REQUIRE(records.size() == 3);
  CHECK(records[1].fields == std::vector<std::string>{"x,1", "he said \"hi\""});
  CHECK(records[2].fields[0] == "multi\nline");
  CHECK(records[2].line == 4);
  CHECK(csv::quote("plain") == "plain");
  CHECK(csv::quote("a\"b") == "\"a\"\"b\"");
}

TEST_CASE("doubles format to the shortest exact representation") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.125, 0.0}) {
    double back = 0.0;
    REQUIRE(csv::parse_double(csv::format_double(v), back));
    CHECK(back == v);
  }
  CHECK(csv::format_double(0.1) == "0.1");
}

TEST_CASE("dataset round-trips through csv exactly") {
  const Dataset ds = testing::random_dataset(100, 4);
  std::stringstream buf;
  write_csv_stream(ds, buf);
  const Dataset back = ingest_csv_stream(buf);
  REQUIRE(back.size() == ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) CHECK(back[i] == ds[i]);
}

TEST_CASE("ingestion sorts rows, records gaps and warns about inverted temperatures") {
  std::istringstream in(
      "timestamp,T_a,G,V_w,Q,T_s,T_r\n"
      "2018-01-01T03:00:00Z,1,0,2,10,70,40\n"
      "2018-01-01T00:00:00Z,1,0,2,10,70,40\n"
      "2018-01-01T01:00:00Z,1,0,2,10,30,40\n");
  const Dataset ds = ingest_csv_stream(in);
  REQUIRE(ds.size() == 3);
  CHECK(ds[0].calendar.timestamp == kJan2018);
  CHECK(ds[2].calendar.timestamp == kJan2018 + 3 * kSecondsPerHour);
  CHECK(ds.gaps() == std::vector<Timestamp>{kJan2018 + 2 * kSecondsPerHour});
  CHECK_FALSE(ds.contiguous());
  CHECK_THROWS_AS(ds.require_contiguous("test"), DatasetHasGaps);
  CHECK(ds.warnings().size() >= 2);
}

TEST_CASE("custom column names are honoured") {
  CsvSchema schema;
  schema.heat_load = "load_kw";
  std::istringstream in("timestamp,T_a,G,V_w,load_kw,T_s,T_r\n2018-01-01T00:00:00Z,1,0,2,10,70,40\n");
  CHECK(ingest_csv_stream(in, schema)[0].substation.heat_load == 10.0);
}

TEST_CASE("malformed input raises typed errors") {
  std::istringstream missing("timestamp,T_a,G,V_w,T_s,T_r\n");
  try {
    ingest_csv_stream(missing);
    FAIL("expected MissingColumn");
  } catch (const MissingColumn& e) {
    CHECK(e.column() == "Q");
  }

  std::istringstream junk(
      "timestamp,T_a,G,V_w,Q,T_s,T_r\n"
      "2018-01-01T00:00:00Z,1,0,2,10,70,40\n"
      "2018-01-01T01:00:00Z,1,0,2,ten,70,40\n");
  try {
    ingest_csv_stream(junk);
    FAIL("expected UnparsableRow");
  } catch (const UnparsableRow& e) {
    CHECK(e.line() == 3);
  }

  std::istringstream dup(
      "timestamp,T_a,G,V_w,Q,T_s,T_r\n"
      "2018-01-01T00:00:00Z,1,0,2,10,70,40\n"
      "2018-01-01T00:00:00Z,1,0,2,10,70,40\n");
  CHECK_THROWS_AS(ingest_csv_stream(dup), NonMonotonicTimestamps);
  CHECK_THROWS_AS(ingest_csv("/nonexistent/file.csv"), IoError);
}

TEST_CASE("split, slice and concat") {
  const Dataset ds = testing::random_dataset(48, 1);
  const auto [train, test] = split_train_test(ds, kJan2018 + 24 * kSecondsPerHour);
  CHECK(train.size() == 24);
  CHECK(test.size() == 24);
  CHECK(test[0] == ds[24]);
  const Dataset joined = train.concat(test);
  REQUIRE(joined.size() == ds.size());
  CHECK(joined[47] == ds[47]);
  CHECK_THROWS(test.concat(train));
  CHECK_THROWS_AS(split_train_test(ds, kJan2018 + 100 * kSecondsPerHour), BoundaryOutOfRange);
  CHECK(ds.slice(10, 20).size() == 10);
  CHECK(ds.heat_load()[3] == ds[3].substation.heat_load);
  std::vector<Row> rows{ds[1], ds[0]};
  CHECK_THROWS_AS(Dataset{rows}, NonMonotonicTimestamps);
}

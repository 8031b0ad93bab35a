#include "helios/metrics.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <map>

#include "helios/error.hpp"

namespace helios::evaluation {

std::string period_name(Period p) {
  switch (p) {
    case Period::Hourly: return "hourly";
    case Period::Daily: return "daily";
    case Period::Weekly: return "weekly";
    case Period::Monthly: return "monthly";
    case Period::Biannual: return "biannual";
  }
  return "hourly";
}

Period parse_period(const std::string& name) {
  for (Period p : {Period::Hourly, Period::Daily, Period::Weekly, Period::Monthly, Period::Biannual})
    if (period_name(p) == name) return p;
  throw ConfigError("unknown period '" + name + "' (hourly, daily, weekly, monthly, biannual)");
}

namespace {

MetricsReport score(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat, bool strict_variance) {
  if (y.size() != yhat.size())
    throw LengthMismatch("metrics need equal lengths, got " + std::to_string(y.size()) + " and " +
                         std::to_string(yhat.size()));
  MetricsReport r;
  const Eigen::Index n = y.size();
  r.count = static_cast<std::size_t>(n);
  const Eigen::ArrayXd err = (y - yhat).array();
  r.rmse = std::sqrt(err.square().mean());
  r.mae = err.abs().mean();
  double ape = 0.0;
  std::size_t kept = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(y[i]) < 1e-6) {
      ++r.mape_skipped;
      continue;
    }
    ape += std::abs(err[i]) / std::abs(y[i]);
    ++kept;
  }
  r.mape = kept == 0 ? std::numeric_limits<double>::quiet_NaN() : 100.0 * ape / static_cast<double>(kept);
  const double sst = (y.array() - y.mean()).square().sum();
  if (n < 2 || sst == 0.0) {
    if (strict_variance) throw DegenerateVariance("R2 is undefined for a constant target");
    r.r2 = std::numeric_limits<double>::quiet_NaN();
  } else {
    r.r2 = 1.0 - err.square().sum() / sst;
  }
  return r;
}

}  // namespace

MetricsReport compute_metrics(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat) {
  if (y.size() != yhat.size() || y.size() < 2)
    throw LengthMismatch("metrics need equal lengths of at least 2, got " + std::to_string(y.size()) + " and " +
                         std::to_string(yhat.size()));
  return score(y, yhat, true);
}

MetricsReport aggregate_horizon_metrics(std::span<const Timestamp> timestamps, const Eigen::VectorXd& y,
                                        const Eigen::VectorXd& yhat, Period period) {
  if (static_cast<Eigen::Index>(timestamps.size()) != y.size() || y.size() != yhat.size())
    throw LengthMismatch("aggregation needs equal-length timestamps, targets and predictions");
  if (period == Period::Hourly) {
    MetricsReport r = compute_metrics(y, yhat);
    r.period = period;
    return r;
  }

  using namespace std::chrono;
  struct Bucket {
    double y = 0.0, yhat = 0.0;
    long hours = 0;
    long expected = 0;
  };
  std::map<long, Bucket> buckets;
  for (std::size_t i = 0; i < timestamps.size(); ++i) {
    const sys_seconds tp{seconds{timestamps[i]}};
    const sys_days day = floor<days>(tp);
    const year_month_day ymd{day};
    long key = 0;
    long expected = 0;
    switch (period) {
      case Period::Daily:
        key = day.time_since_epoch().count();
        expected = 24;
        break;
      case Period::Weekly: {
        // 1970-01-01 was a Thursday; shift so weeks start on Monday.
        key = static_cast<long>(std::floor((day.time_since_epoch().count() + 3) / 7.0));
        expected = 168;
        break;
      }
      case Period::Monthly: {
        key = static_cast<int>(ymd.year()) * 12L + static_cast<long>(static_cast<unsigned>(ymd.month())) - 1;
        const auto first = sys_days{ymd.year() / ymd.month() / 1};
        const auto next = sys_days{(ymd.year() / ymd.month() / 1) + months{1}};
        expected = (next - first).count() * 24L;
        break;
      }
      case Period::Biannual: {
        const bool second = static_cast<unsigned>(ymd.month()) > 6;
        key = static_cast<int>(ymd.year()) * 2L + (second ? 1 : 0);
        const auto first = sys_days{ymd.year() / (second ? July : January) / 1};
        const auto next = second ? sys_days{(ymd.year() + years{1}) / January / 1} : sys_days{ymd.year() / July / 1};
        expected = (next - first).count() * 24L;
        break;
      }
      case Period::Hourly: break;
    }
    Bucket& b = buckets[key];
    b.y += y[static_cast<Eigen::Index>(i)];
    b.yhat += yhat[static_cast<Eigen::Index>(i)];
    ++b.hours;
    b.expected = expected;
  }
  std::vector<double> ys, hs;
  for (const auto& [key, b] : buckets)
    if (b.hours >= b.expected) {
      ys.push_back(b.y);
      hs.push_back(b.yhat);
    }
  if (ys.empty())
    throw InsufficientCoverage("series does not cover a full " + period_name(period) + " period");
  MetricsReport r = score(Eigen::Map<Eigen::VectorXd>(ys.data(), static_cast<Eigen::Index>(ys.size())),
                          Eigen::Map<Eigen::VectorXd>(hs.data(), static_cast<Eigen::Index>(hs.size())), false);
  r.period = period;
  return r;
}

}  // namespace helios::evaluation

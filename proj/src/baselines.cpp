#include "helios/baselines.hpp"

#include <cmath>

#include "helios/error.hpp"
#include "helios/features.hpp"

namespace helios::evaluation {

std::string baseline_name(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::LR: return "LR";
    case BaselineKind::Ridge: return "Ridge";
    case BaselineKind::LASSO: return "LASSO";
    case BaselineKind::ARX: return "ARX";
  }
  return "LR";
}

BaselineSpec default_baseline(BaselineKind kind) {
  BaselineSpec s;
  s.kind = kind;
  if (kind == BaselineKind::Ridge) s.strength = 0.01;
  if (kind == BaselineKind::LASSO) s.strength = 1.0;
  return s;
}

namespace {

struct Standardised {
  Eigen::MatrixXd Z;
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd scale;
};

Standardised standardise(const Eigen::MatrixXd& X) {
  Standardised s;
  s.mean = X.colwise().mean();
  s.Z = X.rowwise() - s.mean;
  s.scale = (s.Z.array().square().colwise().sum() / static_cast<double>(std::max<Eigen::Index>(1, X.rows())))
                .sqrt()
                .matrix();
  for (Eigen::Index j = 0; j < s.scale.size(); ++j)
    if (s.scale[j] == 0.0) s.scale[j] = 1.0;
  s.Z = s.Z.array().rowwise() / s.scale.array();
  return s;
}

LinearModel from_standardised(const Standardised& s, const Eigen::VectorXd& b, double y_mean) {
  LinearModel m;
  m.coef = b.array() / s.scale.transpose().array();
  m.intercept = y_mean - s.mean.dot(m.coef);
  return m;
}

void check_shape(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  if (X.rows() != y.size())
    throw LengthMismatch("design has " + std::to_string(X.rows()) + " rows, target " + std::to_string(y.size()));
  if (X.rows() < 2) throw SingularDesign("regression needs at least 2 rows");
}

}  // namespace

LinearModel linear_regression(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  check_shape(X, y);
  const Eigen::RowVectorXd mean = X.colwise().mean();
  const Eigen::MatrixXd Xc = X.rowwise() - mean;
  const double y_mean = y.mean();
  const Eigen::VectorXd yc = y.array() - y_mean;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xc);
  qr.setThreshold(1e-10);
  if (qr.rank() < X.cols())
    throw SingularDesign("design matrix has rank " + std::to_string(qr.rank()) + " < " + std::to_string(X.cols()));

  const Eigen::MatrixXd gram = Xc.transpose() * Xc;
  LinearModel m;
  m.coef = gram.ldlt().solve(Xc.transpose() * yc);
  m.intercept = y_mean - mean.dot(m.coef);
  return m;
}

LinearModel ridge_regression(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double strength) {
  check_shape(X, y);
  if (strength < 0.0) throw ConfigError("ridge strength must be >= 0");
  const Standardised s = standardise(X);
  const double n = static_cast<double>(X.rows());
  const double y_mean = y.mean();
  const Eigen::VectorXd yc = y.array() - y_mean;
  Eigen::MatrixXd gram = s.Z.transpose() * s.Z / n;
  gram.diagonal().array() += strength;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  if (ldlt.info() != Eigen::Success || (strength == 0.0 && ldlt.rcond() < 1e-14))
    throw SingularDesign("ridge system is singular");
  return from_standardised(s, ldlt.solve(s.Z.transpose() * yc / n), y_mean);
}

LinearModel lasso_regression(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double strength, double tolerance,
                             int max_sweeps) {
  check_shape(X, y);
  if (strength < 0.0) throw ConfigError("lasso strength must be >= 0");
  const Standardised s = standardise(X);
  const double n = static_cast<double>(X.rows());
  const double y_mean = y.mean();
  Eigen::VectorXd resid = y.array() - y_mean;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(X.cols());
  const Eigen::VectorXd col_sq = s.Z.colwise().squaredNorm().transpose() / n;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double biggest = 0.0;
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      if (col_sq[j] == 0.0) continue;
      const double rho = s.Z.col(j).dot(resid) / n + col_sq[j] * b[j];
      const double shrunk = std::copysign(std::max(0.0, std::abs(rho) - strength), rho) / col_sq[j];
      const double delta = shrunk - b[j];
      if (delta != 0.0) {
        resid -= delta * s.Z.col(j);
        b[j] = shrunk;
        biggest = std::max(biggest, std::abs(delta));
      }
    }
    if (biggest < tolerance) break;
  }
  return from_standardised(s, b, y_mean);
}

LinearModel arx_regression(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int order) {
  if (order < 0) throw ConfigError("ARX order must be >= 0");
  if (X.rows() != y.size()) throw LengthMismatch("ARX design and target lengths differ");
  const Eigen::Index n = y.size() - order;
  if (n < 2) throw SingularDesign("ARX needs more rows than its order");
  Eigen::MatrixXd D(n, order + X.cols());
  for (Eigen::Index k = 0; k < n; ++k) {
    for (int j = 0; j < order; ++j) D(k, j) = y[k + order - 1 - j];
    D.row(k).tail(X.cols()) = X.row(k + order);
  }
  const LinearModel full = linear_regression(D, y.tail(n));
  LinearModel m;
  m.ar = full.coef.head(order);
  m.coef = full.coef.tail(X.cols());
  m.intercept = full.intercept;
  return m;
}

Eigen::MatrixXd baseline_features(const Dataset& ds, int harmonics) {
  const features::FourierConfig fc{harmonics};
  Eigen::MatrixXd X(static_cast<Eigen::Index>(ds.size()), 4 + fc.dimension());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const Row& r = ds[i];
    const auto k = static_cast<Eigen::Index>(i);
    X(k, 0) = r.weather.ambient_temperature;
    X(k, 1) = r.weather.wind_speed;
    X(k, 2) = r.weather.global_radiance;
    X(k, 3) = r.calendar.day_type == DayType::WeekendHoliday ? 1.0 : 0.0;
    X.row(k).tail(fc.dimension()) = features::fourier_features<double>(r.calendar.hour, fc).transpose();
  }
  return X;
}

BaselineModel fit_baseline(const BaselineSpec& spec, const Dataset& train) {
  train.require_contiguous("baseline fit");
  BaselineModel m;
  m.spec = spec;
  const Eigen::MatrixXd X = baseline_features(train, m.harmonics);
  const Eigen::VectorXd y = train.heat_load();
  switch (spec.kind) {
    case BaselineKind::LR: m.fit = linear_regression(X, y); break;
    case BaselineKind::Ridge: m.fit = ridge_regression(X, y, spec.strength); break;
    case BaselineKind::LASSO: m.fit = lasso_regression(X, y, spec.strength); break;
    case BaselineKind::ARX: m.fit = arx_regression(X, y, spec.ar_order); break;
  }
  return m;
}

Eigen::VectorXd predict_baseline(const BaselineModel& m, const Dataset& ds) {
  const Eigen::MatrixXd X = baseline_features(ds, m.harmonics);
  Eigen::VectorXd out = (X * m.fit.coef).array() + m.fit.intercept;
  if (m.fit.ar.size() > 0) {
    const Eigen::VectorXd y = ds.heat_load();
    for (Eigen::Index k = 0; k < out.size(); ++k)
      for (Eigen::Index j = 0; j < m.fit.ar.size(); ++j) out[k] += m.fit.ar[j] * y[std::max<Eigen::Index>(0, k - 1 - j)];
  }
  return out;
}

Eigen::VectorXd forecast_baseline(const BaselineModel& m, const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                  Eigen::Index origin, int horizon) {
  Eigen::VectorXd out(horizon);
  const Eigen::Index order = m.fit.ar.size();
  std::vector<double> lags;
  for (Eigen::Index j = std::max<Eigen::Index>(0, origin - order); j < origin; ++j) lags.push_back(y[j]);
  for (int s = 0; s < horizon; ++s) {
    const Eigen::Index k = origin + s;
    double v = m.fit.intercept + X.row(k).dot(m.fit.coef);
    for (Eigen::Index j = 0; j < order; ++j) {
      const auto back = static_cast<Eigen::Index>(lags.size()) - 1 - j;
      v += m.fit.ar[j] * (back >= 0 ? lags[static_cast<std::size_t>(back)] : (lags.empty() ? 0.0 : lags.front()));
    }
    out[s] = v;
    lags.push_back(v);
  }
  return out;
}

}  // namespace helios::evaluation

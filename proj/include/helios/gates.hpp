#pragma once

#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "helios/data.hpp"
#include "helios/error.hpp"
#include "helios/features.hpp"

namespace helios::gates {

/// log(softmax(z)) by max subtraction. Throws NonFiniteInput on NaN/inf entries.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> log_softmax_stable(
    const Eigen::MatrixBase<Derived>& z) {
  using Scalar = typename Derived::Scalar;
  if (!z.allFinite()) throw NonFiniteInput("log_softmax_stable: non-finite logit");
  const Scalar m = z.maxCoeff();
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> shifted = z.array() - m;
  const Scalar lse = std::log(shifted.array().exp().sum());
  return shifted.array() - lse;
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> softmax(const Eigen::MatrixBase<Derived>& z) {
  return log_softmax_stable(z).array().exp();
}

/// Softmax over contexts with logits z_c = r(h) . v_{c,d}; one |C| x 2P weight
/// matrix per day type.
struct TimeGatingNetwork {
  std::array<Eigen::MatrixXd, 2> weights;

  TimeGatingNetwork() = default;
  TimeGatingNetwork(int contexts, const features::FourierConfig& fourier)
      : weights{Eigen::MatrixXd::Zero(contexts, fourier.dimension()),
                Eigen::MatrixXd::Zero(contexts, fourier.dimension())} {}

  int context_count() const noexcept { return static_cast<int>(weights[0].rows()); }
  int feature_dimension() const noexcept { return static_cast<int>(weights[0].cols()); }
};

/// Softmax over contexts with logits u_{c,0} + u_{c,1} S.
struct SeasonGatingNetwork {
  Eigen::MatrixXd params;  // |C| x 2: intercept, slope

  SeasonGatingNetwork() = default;
  explicit SeasonGatingNetwork(int contexts) : params(Eigen::MatrixXd::Zero(contexts, 2)) {}

  int context_count() const noexcept { return static_cast<int>(params.rows()); }
};

/// Logits for a precomputed Fourier encoding.
inline Eigen::VectorXd time_gate_logits(const TimeGatingNetwork& net, const Eigen::VectorXd& encoding, DayType d) {
  return net.weights[static_cast<std::size_t>(day_index(d))] * encoding;
}

inline Eigen::VectorXd time_gate_probs(const TimeGatingNetwork& net, int hour, DayType d) {
  const features::FourierConfig cfg{net.feature_dimension() / 2};
  return softmax(time_gate_logits(net, features::fourier_features(hour, cfg), d));
}

inline Eigen::VectorXd season_gate_logits(const SeasonGatingNetwork& net, double season) {
  return net.params.col(0) + net.params.col(1) * season;
}

inline Eigen::VectorXd season_gate_probs(const SeasonGatingNetwork& net, double season) {
  return softmax(season_gate_logits(net, season));
}

}  // namespace helios::gates

#pragma once

#include <cmath>
#include <numbers>
#include <span>

#include <Eigen/Dense>

#include "helios/data.hpp"

namespace helios::features {

struct FourierConfig {
  int harmonics = 3;  // P; the encoding has 2P components
  static constexpr double period_hours = 24.0;

  int dimension() const noexcept { return 2 * harmonics; }
};

/// [sin(2 pi p h / 24), cos(2 pi p h / 24)] for p = 1..P, interleaved.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> fourier_features(int hour, const FourierConfig& cfg) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> r(cfg.dimension());
  // Reduce the hour first so that h and h + 24 give bit-identical encodings.
  const int h = ((hour % 24) + 24) % 24;
  for (int p = 1; p <= cfg.harmonics; ++p) {
    const Scalar angle = Scalar(2.0 * std::numbers::pi * p * h / FourierConfig::period_hours);
    r[2 * (p - 1)] = std::sin(angle);
    r[2 * (p - 1) + 1] = std::cos(angle);
  }
  return r;
}

/// 24 x 2P table of encodings, row h.
Eigen::MatrixXd fourier_table(const FourierConfig& cfg);

/// Mean of the last `window` entries of `history` (newest last): the season
/// index for the step right after the history. Throws InsufficientHistory.
double season_index(std::span<const double> history, int window);

/// S(k) for every row; entries k < window have no defined season and are NaN.
Eigen::VectorXd season_series(const Eigen::VectorXd& ambient, int window);

struct GroundModelConfig {
  double pipe_depth = 1.0;       // z, m
  double mean_ambient = 10.0;    // degC
  double amplitude = 8.0;        // degC
  double phase_shift_days = 15;  // d_g
  double diffusivity = 0.07;     // alpha_d, m2/day

  /// Throws ConfigError on negative depth/amplitude or non-positive diffusivity.
  void validate() const;
};

/// Depth-damped, phase-shifted annual sinusoid for the soil temperature.
template <typename Scalar = double>
Scalar ground_temperature(Scalar day_of_year, const GroundModelConfig& cfg) {
  const double damping = cfg.pipe_depth * std::sqrt(std::numbers::pi / (365.0 * cfg.diffusivity));
  return Scalar(cfg.mean_ambient) -
         Scalar(cfg.amplitude * std::exp(-damping)) *
             std::cos(Scalar(2.0 * std::numbers::pi / 365.0) * (day_of_year - Scalar(cfg.phase_shift_days)) -
                      Scalar(damping));
}

/// Annual mean of T_a and half the spread of its daily means, keeping the
/// remaining fields of `base`.
GroundModelConfig estimate_ground_config(const Dataset& train, GroundModelConfig base = {});

template <typename Scalar>
constexpr Scalar equivalent_pipe_temperature(Scalar supply, Scalar ret) {
  return (supply + ret) / Scalar(2);
}

}  // namespace helios::features

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "helios/error.hpp"
#include "helios/features.hpp"
#include "support.hpp"

using namespace helios;
using namespace helios::features;

TEST_CASE("fourier encoding is periodic and interleaved") {
  const FourierConfig cfg{3};
  const Eigen::VectorXd r6 = fourier_features(6, cfg);
  REQUIRE(r6.size() == 6);
  CHECK(r6[0] == doctest::Approx(1.0));  // sin(pi/2)
  CHECK(r6[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r6[2] == doctest::Approx(0.0).epsilon(1e-12));  // sin(pi)
  CHECK(r6[3] == doctest::Approx(-1.0));
  for (int h = 0; h < 24; ++h) {
    CHECK(fourier_features(h, cfg) == fourier_features(h + 24, cfg));
    const Eigen::VectorXd r = fourier_features(h, cfg);
    for (int p = 0; p < 3; ++p) CHECK(r[2 * p] * r[2 * p] + r[2 * p + 1] * r[2 * p + 1] == doctest::Approx(1.0));
  }
  const Eigen::MatrixXd table = fourier_table(cfg);
  CHECK(table.rows() == 24);
  CHECK(table.cols() == 6);
  CHECK(Eigen::VectorXd(table.row(17).transpose()) == fourier_features(17, cfg));
}

TEST_CASE("season index is the trailing mean") {
  const std::vector<double> t{1, 2, 3, 4, 5, 6};
  CHECK(season_index(t, 3) == doctest::Approx(5.0));
  CHECK(season_index(t, 6) == doctest::Approx(3.5));
  CHECK_THROWS_AS(season_index(t, 7), InsufficientHistory);

  Eigen::VectorXd a(6);
  a << 1, 2, 3, 4, 5, 6;
  const Eigen::VectorXd s = season_series(a, 3);
  CHECK(std::isnan(s[2]));
  CHECK(s[3] == doctest::Approx(2.0));  // mean of rows 0..2
  CHECK(s[5] == doctest::Approx(4.0));
}

TEST_CASE("ground temperature is damped, shifted and annual") {
  GroundModelConfig cfg;
  cfg.pipe_depth = 0.0;
  cfg.mean_ambient = 10.0;
  cfg.amplitude = 8.0;
  cfg.phase_shift_days = 15.0;
  CHECK(ground_temperature(15.0, cfg) == doctest::Approx(2.0));
  CHECK(ground_temperature(15.0 + 182.5, cfg) == doctest::Approx(18.0));

  cfg.pipe_depth = 1.0;
  const double damping = std::sqrt(std::numbers::pi / (365.0 * cfg.diffusivity));
  double lo = 1e9, hi = -1e9;
  for (int d = 1; d <= 365; ++d) {
    lo = std::min(lo, ground_temperature(double(d), cfg));
    hi = std::max(hi, ground_temperature(double(d), cfg));
  }
  CHECK((hi - lo) / 2 == doctest::Approx(8.0 * std::exp(-damping)).epsilon(1e-3));
  CHECK(ground_temperature(1.0, cfg) == doctest::Approx(ground_temperature(366.0, cfg)));

  cfg.diffusivity = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("ground parameters are estimated from daily means") {
  const Dataset ds = testing::random_dataset(24 * 20, 3);
  const GroundModelConfig g = estimate_ground_config(ds);
  CHECK(g.mean_ambient == doctest::Approx(ds.ambient_temperature().mean()));
  CHECK(g.amplitude > 0.0);
  CHECK(g.amplitude < 5.0);
  CHECK(g.pipe_depth == GroundModelConfig{}.pipe_depth);
}

TEST_CASE("equivalent pipe temperature is the supply-return mean") {
  CHECK(equivalent_pipe_temperature(80.0, 40.0) == 60.0);
}

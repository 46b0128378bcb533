#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "momdwa/spline.hpp"

using momdwa::ConfigError;
using momdwa::spline_upsample;

TEST_CASE("constant data reproduces exactly") {
  const std::vector<double> coarse(10, 3.25);
  const auto fine = spline_upsample(coarse, 30, 1.0);
  REQUIRE(fine.size() == 301);
  for (double v : fine) REQUIRE(v == Catch::Approx(3.25).margin(1e-12));
}

TEST_CASE("linear data reproduces over the knot range") {
  // Knots at t_j = j/10 carry 2t + 1; a cubic spline must return the same
  // line up to the last knot, then hold the final value.
  std::vector<double> coarse(10);
  for (int j = 0; j < 10; ++j) coarse[j] = 2.0 * (j / 10.0) + 1.0;
  const auto fine = spline_upsample(coarse, 30, 1.0);
  const double t_last = 0.9;
  for (std::size_t k = 0; k < fine.size(); ++k) {
    const double t = static_cast<double>(k) / 300.0;
    const double expected = t <= t_last ? 2.0 * t + 1.0 : 2.0 * t_last + 1.0;
    REQUIRE(fine[k] == Catch::Approx(expected).margin(1e-10));
  }
}

TEST_CASE("fine grid hits every coarse knot exactly") {
  const std::vector<double> coarse{0.3, -1.7, 2.5, 0.0, 4.1, -0.2, 1.1};
  const auto fine = spline_upsample(coarse, 30, 1.0);
  for (std::size_t j = 0; j < coarse.size(); ++j)
    REQUIRE(fine[30 * j] == coarse[j]);
}

TEST_CASE("tail beyond the last knot holds the final value") {
  const std::vector<double> coarse{1.0, 2.0, 0.5, -3.0};
  const auto fine = spline_upsample(coarse, 4, 2.0);  // knots every 0.5 up to 1.5
  for (std::size_t k = 12; k < fine.size(); ++k)  // t >= 1.5
    REQUIRE(fine[k] == -3.0);
}

TEST_CASE("values are clamped to the control bounds") {
  // A spike forces overshoot outside the knots.
  const std::vector<double> coarse{0.0, 0.0, 5.0, 0.0, 0.0};
  const auto fine = spline_upsample(coarse, 20, 1.0, -1.0, 5.0);
  for (double v : fine) {
    REQUIRE(v >= -1.0);
    REQUIRE(v <= 5.0);
  }
}

TEST_CASE("two knots degrade to a straight line") {
  const std::vector<double> coarse{1.0, 3.0};
  const auto fine = spline_upsample(coarse, 10, 1.0);  // knots at 0 and 0.5
  for (std::size_t k = 0; k <= 10; ++k) {
    const double t = static_cast<double>(k) / 20.0;
    REQUIRE(fine[k] == Catch::Approx(1.0 + 4.0 * t).margin(1e-12));
  }
  for (std::size_t k = 10; k < fine.size(); ++k) REQUIRE(fine[k] == 3.0);
}

TEST_CASE("a single knot is a constant") {
  const std::vector<double> coarse{2.5};
  for (double v : spline_upsample(coarse, 8, 1.0)) REQUIRE(v == 2.5);
}

TEST_CASE("zero interpolation factor is a configuration error") {
  REQUIRE_THROWS_AS(spline_upsample(std::vector<double>{1.0, 2.0}, 0, 1.0), ConfigError);
}

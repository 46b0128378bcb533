#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "momdwa/errors.hpp"

namespace momdwa {

/// Natural cubic spline through n equally spaced knots t_j = j*T/n,
/// j = 0..n-1, evaluated on the uniform (alpha*n + 1)-point grid spanning
/// [0, T]. Beyond the last knot the last coarse value is held constant.
/// Two knots degrade to a straight line and one knot to a constant. Output
/// values are clamped to [lo, hi].
inline std::vector<double> spline_upsample(
    std::span<const double> coarse, int alpha, double total_time,
    double lo = -std::numeric_limits<double>::infinity(),
    double hi = std::numeric_limits<double>::infinity()) {
  if (alpha < 1) throw ConfigError("interpolation factor must be >= 1");
  if (coarse.empty()) throw ConfigError("spline_upsample: no coarse samples");
  if (!(total_time > 0.0)) throw ConfigError("spline_upsample: total time must be positive");

  const std::size_t n = coarse.size();
  const double h = total_time / static_cast<double>(n);
  const double t_last = static_cast<double>(n - 1) * h;

  // Second derivatives at the knots; natural ends stay zero.
  std::vector<double> second(n, 0.0);
  if (n >= 3) {
    const std::size_t interior = n - 2;
    std::vector<double> rhs(interior), diag_scale(interior), solved(interior);
    for (std::size_t k = 0; k < interior; ++k)
      rhs[k] = 6.0 * (coarse[k + 2] - 2.0 * coarse[k + 1] + coarse[k]) / (h * h);
    // Thomas sweep for the tridiagonal system (1, 4, 1).
    diag_scale[0] = 0.25;
    solved[0] = rhs[0] * 0.25;
    for (std::size_t k = 1; k < interior; ++k) {
      const double denom = 4.0 - diag_scale[k - 1];
      diag_scale[k] = 1.0 / denom;
      solved[k] = (rhs[k] - solved[k - 1]) / denom;
    }
    second[interior] = solved[interior - 1];
    for (std::size_t k = interior - 1; k >= 1; --k)
      second[k] = solved[k - 1] - diag_scale[k - 1] * second[k + 1];
  }

  const std::size_t fine_steps = static_cast<std::size_t>(alpha) * n;
  std::vector<double> fine(fine_steps + 1);
  for (std::size_t k = 0; k <= fine_steps; ++k) {
    double value;
    if (k % static_cast<std::size_t>(alpha) == 0 &&
        k / static_cast<std::size_t>(alpha) < n) {
      value = coarse[k / static_cast<std::size_t>(alpha)];  // exact at knots
    } else {
      const double t = total_time * static_cast<double>(k) / static_cast<double>(fine_steps);
      if (t >= t_last) {
        value = coarse[n - 1];
      } else {
        std::size_t i = std::min(static_cast<std::size_t>(t / h), n - 2);
        const double s = t - static_cast<double>(i) * h;
        const double slope =
            (coarse[i + 1] - coarse[i]) / h - h * (2.0 * second[i] + second[i + 1]) / 6.0;
        value = coarse[i] +
                s * (slope + s * (second[i] / 2.0 + s * (second[i + 1] - second[i]) / (6.0 * h)));
      }
    }
    fine[k] = std::clamp(value, lo, hi);
  }
  return fine;
}

}  // namespace momdwa

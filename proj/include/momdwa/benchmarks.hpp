#pragma once

#include <cmath>
#include <span>

#include "momdwa/optimizer.hpp"

namespace momdwa {

/// Single-variable benchmark: f1 = x^2, f2 = (x - 2)^2 on [-1000, 1000].
/// Pareto set x in [0, 2]; front f2 = (sqrt(f1) - 2)^2.
class SchafferProblem {
 public:
  std::size_t dimension() const { return 1; }
  Bounds bounds() const { return Bounds::uniform(1, -1000.0, 1000.0); }
  Evaluation evaluate(std::span<const double> x) const {
    const double v = x[0];
    return {{v * v, (v - 2.0) * (v - 2.0)}, 1.0};
  }
};

/// Three-variable exponential benchmark with a nonconvex front. The Pareto
/// set is the diagonal x1 = x2 = x3 in [-1/sqrt(3), 1/sqrt(3)].
class FonsecaProblem {
 public:
  static constexpr double k_shift = 0.57735026918962576;  // 1/sqrt(3)

  std::size_t dimension() const { return 3; }
  Bounds bounds() const { return Bounds::uniform(3, -4.0, 4.0); }
  Evaluation evaluate(std::span<const double> x) const {
    double sum_plus = 0.0, sum_minus = 0.0;
    for (double v : x) {
      sum_plus += (v + k_shift) * (v + k_shift);
      sum_minus += (v - k_shift) * (v - k_shift);
    }
    return {{1.0 - std::exp(-sum_plus), 1.0 - std::exp(-sum_minus)}, 1.0};
  }
};

}  // namespace momdwa

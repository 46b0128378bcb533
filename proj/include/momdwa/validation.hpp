#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "momdwa/benchmarks.hpp"
#include "momdwa/optimizer.hpp"

namespace momdwa {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Schaffer check: every archive member must sit on the analytic front
/// f2 = (sqrt(f1) - 2)^2 within 0.05, the front must span f1 in
/// [0.05, 3.8] or wider, and each seed must finish within 10 seconds.
inline CheckResult check_schaffer_front(const std::vector<std::uint64_t>& seeds) {
  CheckResult result{"schaffer analytic front", true, ""};
  std::ostringstream detail;
  MomdwaParams params;
  params.population_size = 50;
  params.repository_capacity = 100;
  params.max_generations = 100;

  for (std::uint64_t seed : seeds) {
    const auto started = std::chrono::steady_clock::now();
    const OptimizeResult outcome = optimize(SchafferProblem{}, params, seed);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    double worst_gap = 0.0;
    double min_f1 = std::numeric_limits<double>::infinity();
    double max_f1 = 0.0;
    for (const auto& member : outcome.repository.members()) {
      const double f1 = member.objectives[0];
      const double f2 = member.objectives[1];
      worst_gap = std::max(worst_gap, std::abs(f2 - (std::sqrt(f1) - 2.0) * (std::sqrt(f1) - 2.0)));
      min_f1 = std::min(min_f1, f1);
      max_f1 = std::max(max_f1, f1);
    }
    const bool seed_ok =
        worst_gap <= 0.05 && min_f1 <= 0.05 && max_f1 >= 3.8 && elapsed < 10.0;
    if (!seed_ok) result.passed = false;
    detail << "seed " << seed << ": gap " << worst_gap << ", f1 span [" << min_f1 << ", "
           << max_f1 << "], " << elapsed << " s" << (seed_ok ? "" : " <- FAIL") << "; ";
  }
  result.detail = detail.str();
  return result;
}

/// Fonseca check: at least 90% of archive members within Euclidean distance
/// 0.03 of the analytic front (dense diagonal parameterization), within 30 s.
inline CheckResult check_fonseca_front(std::uint64_t seed) {
  CheckResult result{"fonseca nonconvex front", true, ""};
  MomdwaParams params;
  params.population_size = 100;
  params.repository_capacity = 100;
  params.max_generations = 200;

  const auto started = std::chrono::steady_clock::now();
  const OptimizeResult outcome = optimize(FonsecaProblem{}, params, seed);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  // Dense image of the Pareto set x1 = x2 = x3 in [-1/sqrt3, 1/sqrt3].
  constexpr int k_samples = 8001;
  std::vector<std::array<double, 2>> front;
  front.reserve(k_samples);
  FonsecaProblem problem;
  for (int i = 0; i < k_samples; ++i) {
    const double s = -FonsecaProblem::k_shift +
                     2.0 * FonsecaProblem::k_shift * static_cast<double>(i) / (k_samples - 1);
    const double x[3] = {s, s, s};
    const Evaluation value = problem.evaluate(std::span<const double>(x, 3));
    front.push_back({value.objectives[0], value.objectives[1]});
  }

  std::size_t close = 0;
  for (const auto& member : outcome.repository.members()) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& point : front) {
      const double df1 = member.objectives[0] - point[0];
      const double df2 = member.objectives[1] - point[1];
      best = std::min(best, df1 * df1 + df2 * df2);
    }
    if (std::sqrt(best) <= 0.03) ++close;
  }
  const double fraction =
      static_cast<double>(close) / static_cast<double>(outcome.repository.size());
  result.passed = fraction >= 0.9 && elapsed < 30.0;

  std::ostringstream detail;
  detail << close << "/" << outcome.repository.size() << " members within 0.03 ("
         << fraction * 100.0 << "%), " << elapsed << " s";
  result.detail = detail.str();
  return result;
}

/// Benchmark validation bundle used by the `validate` subcommand.
inline std::vector<CheckResult> run_benchmark_validation() {
  return {check_schaffer_front({1, 2, 3, 4, 5}), check_fonseca_front(1)};
}

}  // namespace momdwa

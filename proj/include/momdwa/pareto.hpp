#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace momdwa {

using ObjectiveVector = std::vector<double>;

/// One search-space point together with its evaluation results. Objectives
/// stay empty until evaluated. Fidelity is auxiliary: it drives screening and
/// reporting but is never a dominance axis.
struct Particle {
  std::vector<double> position;
  ObjectiveVector objectives;
  double fidelity = 0.0;

  bool evaluated() const { return !objectives.empty(); }
  bool finite_objectives() const {
    return evaluated() &&
           std::all_of(objectives.begin(), objectives.end(),
                       [](double v) { return std::isfinite(v); });
  }
};

/// Strict Pareto dominance under minimization: a is no worse in every
/// objective and strictly better in at least one.
inline bool dominates(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::logic_error("dominates: objective length mismatch");
  bool strictly_better = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k]) return false;
    if (a[k] < b[k]) strictly_better = true;
  }
  return strictly_better;
}

/// Indices of the vectors no other vector in the set dominates,
/// in their original order.
inline std::vector<std::size_t> non_dominated_subset(
    const std::vector<ObjectiveVector>& objectives) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < objectives.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < objectives.size() && !dominated; ++j)
      dominated = j != i && dominates(objectives[j], objectives[i]);
    if (!dominated) kept.push_back(i);
  }
  return kept;
}

/// Non-dominated sort by successive peeling; returns the 1-based rank of
/// every entry (rank 1 = dominated by nothing).
inline std::vector<int> non_dominated_sort(
    const std::vector<ObjectiveVector>& objectives) {
  std::vector<int> rank(objectives.size(), 0);
  std::vector<std::size_t> remaining(objectives.size());
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  int level = 1;
  while (!remaining.empty()) {
    std::vector<std::size_t> front;
    for (std::size_t i : remaining) {
      bool dominated = false;
      for (std::size_t j : remaining) {
        if (j != i && dominates(objectives[j], objectives[i])) {
          dominated = true;
          break;
        }
      }
      if (!dominated) front.push_back(i);
    }
    for (std::size_t i : front) rank[i] = level;
    std::erase_if(remaining, [&](std::size_t i) { return rank[i] != 0; });
    ++level;
  }
  return rank;
}

/// Crowding distances on one front. Per objective the two extreme solutions
/// receive +infinity and interior ones accumulate the normalized gap between
/// their sorted neighbours; an objective with zero spread contributes 0.
inline std::vector<double> crowding_distance(
    const std::vector<ObjectiveVector>& front) {
  const std::size_t n = front.size();
  if (n == 0) throw std::logic_error("crowding_distance: empty front");
  const std::size_t num_objectives = front[0].size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> distance(n, 0.0);
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < num_objectives; ++k) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return front[a][k] < front[b][k];
    });
    distance[order.front()] = inf;
    distance[order.back()] = inf;
    const double spread = front[order.back()][k] - front[order.front()][k];
    if (spread <= 0.0) continue;
    for (std::size_t i = 1; i + 1 < n; ++i)
      distance[order[i]] += (front[order[i + 1]][k] - front[order[i - 1]][k]) / spread;
  }
  return distance;
}

}  // namespace momdwa

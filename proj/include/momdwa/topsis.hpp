#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "momdwa/errors.hpp"
#include "momdwa/pareto.hpp"
#include "momdwa/repository.hpp"

namespace momdwa {

struct TopsisWeights {
  std::vector<double> values;

  void validate(std::size_t columns) const {
    if (values.size() != columns)
      throw ConfigError("topsis weights: expected " + std::to_string(columns) +
                        " entries, got " + std::to_string(values.size()));
    for (double w : values)
      if (!std::isfinite(w) || !(w > 0.0))
        throw ConfigError("topsis weights must be positive and finite");
  }
};

struct DecisionReport {
  std::size_t screened_count = 0;
  std::vector<double> scores;      // normalized to sum 1
  std::size_t selected_index = 0;  // into the screened list
};

/// Repository rows whose fidelity clears epsilon. When nothing does, the
/// single best-fidelity member is kept so the decision stage always has a
/// non-empty matrix.
inline std::vector<std::size_t> screen_by_fidelity(const Repository& repository,
                                                   double epsilon) {
  if (repository.empty()) throw DecisionError("cannot screen an empty repository");
  const auto& members = repository.members();
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < members.size(); ++i)
    if (members[i].fidelity >= epsilon) kept.push_back(i);
  if (kept.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < members.size(); ++i)
      if (members[i].fidelity > members[best].fidelity) best = i;
    kept.push_back(best);
  }
  return kept;
}

using DecisionMatrix = std::vector<std::vector<double>>;

/// Larger-is-better rescale: every column entry becomes (column max - value).
inline DecisionMatrix positivize(DecisionMatrix matrix) {
  if (matrix.empty()) throw DecisionError("positivize: empty matrix");
  const std::size_t columns = matrix[0].size();
  for (std::size_t j = 0; j < columns; ++j) {
    double column_max = matrix[0][j];
    for (const auto& row : matrix) column_max = std::max(column_max, row[j]);
    for (auto& row : matrix) row[j] = column_max - row[j];
  }
  return matrix;
}

/// Weighted closeness to the per-column ideal (max) versus anti-ideal (min)
/// vectors of a positivized matrix, normalized so the scores sum to 1. A row
/// coinciding with both ideals (all rows identical) scores 0.5 before
/// normalization.
inline std::vector<double> topsis_scores(const DecisionMatrix& matrix,
                                         const TopsisWeights& weights) {
  if (matrix.empty()) throw DecisionError("topsis_scores: empty matrix");
  const std::size_t columns = matrix[0].size();
  weights.validate(columns);

  std::vector<double> ideal(columns), anti_ideal(columns);
  for (std::size_t j = 0; j < columns; ++j) {
    ideal[j] = anti_ideal[j] = matrix[0][j];
    for (const auto& row : matrix) {
      ideal[j] = std::max(ideal[j], row[j]);
      anti_ideal[j] = std::min(anti_ideal[j], row[j]);
    }
  }

  std::vector<double> scores(matrix.size());
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    double d_plus = 0.0, d_minus = 0.0;
    for (std::size_t j = 0; j < columns; ++j) {
      const double w = weights.values[j];
      d_plus += w * (matrix[i][j] - ideal[j]) * (matrix[i][j] - ideal[j]);
      d_minus += w * (matrix[i][j] - anti_ideal[j]) * (matrix[i][j] - anti_ideal[j]);
    }
    d_plus = std::sqrt(d_plus);
    d_minus = std::sqrt(d_minus);
    scores[i] = (d_plus + d_minus > 0.0) ? d_minus / (d_plus + d_minus) : 0.5;
  }

  double total = 0.0;
  for (double s : scores) total += s;
  for (double& s : scores) s /= total;
  return scores;
}

struct Selection {
  Particle particle;
  DecisionReport report;
  std::size_t repository_index = 0;
  std::vector<std::size_t> screened;  // repository rows aligned with report.scores
};

/// Full decision pipeline over a repository: fidelity screening, matrix of
/// stored minimized objectives, positivization, scoring, argmax (ties broken
/// by lowest index).
inline Selection select_best(const Repository& repository, const TopsisWeights& weights,
                             double epsilon) {
  Selection selection;
  selection.screened = screen_by_fidelity(repository, epsilon);

  DecisionMatrix matrix;
  matrix.reserve(selection.screened.size());
  for (std::size_t i : selection.screened)
    matrix.push_back(repository.members()[i].objectives);

  selection.report.scores = topsis_scores(positivize(std::move(matrix)), weights);
  selection.report.screened_count = selection.screened.size();

  std::size_t best = 0;
  for (std::size_t i = 1; i < selection.report.scores.size(); ++i)
    if (selection.report.scores[i] > selection.report.scores[best]) best = i;
  selection.report.selected_index = best;
  selection.repository_index = selection.screened[best];
  selection.particle = repository.members()[selection.repository_index];
  return selection;
}

}  // namespace momdwa

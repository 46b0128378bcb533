#pragma once

#include <cassert>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "momdwa/errors.hpp"
#include "momdwa/pareto.hpp"
#include "momdwa/random.hpp"
#include "momdwa/repository.hpp"

namespace momdwa {

/// Per-dimension box bounds of the search space.
struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dimension() const { return lower.size(); }

  void validate() const {
    if (lower.empty() || lower.size() != upper.size())
      throw ConfigError("bounds: lower and upper must have equal nonzero length");
    for (std::size_t j = 0; j < lower.size(); ++j) {
      if (!std::isfinite(lower[j]) || !std::isfinite(upper[j]) || lower[j] > upper[j])
        throw ConfigError("bounds: need finite lower <= upper at dimension " +
                          std::to_string(j));
    }
  }

  static Bounds uniform(std::size_t dimension, double lo, double hi) {
    return Bounds{std::vector<double>(dimension, lo), std::vector<double>(dimension, hi)};
  }
};

struct MomdwaParams {
  std::size_t population_size = 100;
  std::size_t max_generations = 500;
  double threshold = 0.02;  // probability of the damped-wave branch, per coordinate
  double bb_low = -2.0;
  double bb_high = 2.0;
  double gg_low = 0.0;  // exclusive: gg draws are strictly above this
  double gg_high = 1.0;
  double amplitude_a = 1.0;  // wave amplitude at generation 0, decays linearly to 0
  double decay_base = 0.95;
  std::size_t repository_capacity = 100;

  void validate() const {
    if (population_size == 0) throw ConfigError("population size must be >= 1");
    if (!(threshold > 0.0 && threshold < 1.0))
      throw ConfigError("threshold must lie in (0, 1)");
    if (!(decay_base > 0.0 && decay_base < 1.0))
      throw ConfigError("decay base must lie in (0, 1)");
    if (!(amplitude_a > 0.0)) throw ConfigError("wave amplitude must be positive");
    if (!(bb_low <= bb_high)) throw ConfigError("bb range is inverted");
    if (!(gg_low < gg_high)) throw ConfigError("gg range is empty");
    if (gg_low < 0.0) throw ConfigError("gg range must be non-negative");
    if (repository_capacity == 0) throw ConfigError("repository capacity must be >= 1");
  }
};

inline constexpr double k_singular_denominator = 1e-12;
inline constexpr int k_max_bb_redraws = 8;

/// Damped-wave mutation of one coordinate:
/// a / (bb + pos) * sin(2*pi / gg * pos) + r * best.
inline double damped_wave_move(double pos, double best, double a, double bb, double gg,
                               double r) {
  return a / (bb + pos) * std::sin(2.0 * std::numbers::pi / gg * pos) + r * best;
}

/// Leader-guided move with geometrically decaying perturbation:
/// best + r * decay_base^gen.
inline double guided_move(double best, std::size_t gen, double decay_base, double r) {
  return best + r * std::pow(decay_base, static_cast<double>(gen));
}

/// Wave amplitude schedule: linear decay from amplitude_a at generation 0
/// down to 0 at the final generation.
inline double amplitude_at(const MomdwaParams& params, std::size_t gen) {
  if (params.max_generations == 0) return params.amplitude_a;
  return params.amplitude_a *
         (1.0 - static_cast<double>(gen) / static_cast<double>(params.max_generations));
}

/// Np particles with positions drawn uniformly inside the bounds
/// (particle-major, then coordinate) and objectives left pending.
inline std::vector<Particle> initialize_population(const Bounds& bounds, std::size_t np,
                                                   RandomStream& rng) {
  bounds.validate();
  if (np == 0) throw ConfigError("population size must be >= 1");
  std::vector<Particle> population(np);
  for (auto& particle : population) {
    particle.position.resize(bounds.dimension());
    for (std::size_t j = 0; j < bounds.dimension(); ++j)
      particle.position[j] = rng.uniform(bounds.lower[j], bounds.upper[j]);
  }
  return population;
}

/// New raw (pre-boundary) position. Per coordinate, one selector draw picks
/// the branch: below the threshold, a damped-wave move with fresh bb and gg
/// draws (bb redrawn up to 8 times while |bb + pos| is singular, falling back
/// to the guided move if it stays singular); otherwise the guided move.
/// Draw order per coordinate: selector, [bb..., gg], r.
inline std::vector<double> update_position(const Particle& particle, const Particle& leader,
                                           std::size_t gen, const MomdwaParams& params,
                                           RandomStream& rng) {
  const double amplitude = amplitude_at(params, gen);
  std::vector<double> next(particle.position.size());
  for (std::size_t j = 0; j < next.size(); ++j) {
    const double pos = particle.position[j];
    const double best = leader.position[j];
    if (rng.uniform() < params.threshold) {
      double bb = rng.uniform(params.bb_low, params.bb_high);
      for (int redraw = 0;
           std::abs(bb + pos) < k_singular_denominator && redraw < k_max_bb_redraws;
           ++redraw)
        bb = rng.uniform(params.bb_low, params.bb_high);
      if (std::abs(bb + pos) < k_singular_denominator) {
        next[j] = guided_move(best, gen, params.decay_base, rng.uniform());
      } else {
        const double gg =
            params.gg_low + (params.gg_high - params.gg_low) * (1.0 - rng.uniform());
        next[j] = damped_wave_move(pos, best, amplitude, bb, gg, rng.uniform());
      }
    } else {
      next[j] = guided_move(best, gen, params.decay_base, rng.uniform());
    }
  }
  return next;
}

/// Boundary handling with one draw per coordinate. Above the threshold the
/// coordinate is clamped to the violated bound; at or below it, an
/// out-of-bounds coordinate is resampled uniformly inside the bounds.
inline std::vector<double> handle_bounds(std::vector<double> position, const Bounds& bounds,
                                         double threshold, RandomStream& rng) {
  for (std::size_t j = 0; j < position.size(); ++j) {
    const double lo = bounds.lower[j];
    const double hi = bounds.upper[j];
    double& x = position[j];
    if (rng.uniform() > threshold) {
      if (x > hi) {
        // The printed companion case (x > hi and x < lo) would need hi < lo
        // and can never fire.
        assert(!(x < lo));
        x = hi;
      } else if (x < lo) {
        x = lo;
      }
    } else if (x < lo || x > hi) {
      x = rng.uniform(lo, hi);
    }
  }
  return position;
}

/// Result of one objective evaluation.
struct Evaluation {
  ObjectiveVector objectives;
  double fidelity = 0.0;
};

template <typename P>
concept ObjectiveBundle = requires(const P& p, std::span<const double> x) {
  { p.dimension() } -> std::convertible_to<std::size_t>;
  { p.bounds() } -> std::convertible_to<Bounds>;
  { p.evaluate(x) } -> std::convertible_to<Evaluation>;
};

struct HistoryRow {
  std::size_t generation = 0;
  std::size_t repository_size = 0;
  std::vector<double> objective_min;  // per objective, over the repository
  double best_fidelity = 0.0;
};

struct OptimizeResult {
  Repository repository;
  std::vector<HistoryRow> history;
};

inline HistoryRow make_history_row(std::size_t generation, const Repository& repository) {
  HistoryRow row;
  row.generation = generation;
  row.repository_size = repository.size();
  row.best_fidelity = 0.0;
  if (!repository.empty()) {
    row.objective_min = repository.members().front().objectives;
    for (const auto& member : repository.members()) {
      for (std::size_t k = 0; k < row.objective_min.size(); ++k)
        row.objective_min[k] = std::min(row.objective_min[k], member.objectives[k]);
      row.best_fidelity = std::max(row.best_fidelity, member.fidelity);
    }
  }
  return row;
}

/// Full optimizer loop. Each generation moves every particle toward a
/// randomly selected repository leader, repairs bounds, re-evaluates, and
/// merges the population into the archive. Evaluations that come back
/// non-finite are quarantined for the generation: the particle keeps its new
/// position but is marked with +infinity objectives and never enters the
/// repository. Identical (seed, params, problem) yield bit-identical results.
template <ObjectiveBundle P>
OptimizeResult optimize(const P& problem, const MomdwaParams& params, std::uint64_t seed) {
  params.validate();
  const Bounds bounds = problem.bounds();
  bounds.validate();
  if (bounds.dimension() != problem.dimension())
    throw ConfigError("problem bounds do not match its dimension");

  SeedStreams streams(seed);
  const double inf = std::numeric_limits<double>::infinity();

  auto evaluate_into = [&](Particle& particle) {
    Evaluation evaluation = problem.evaluate(std::span<const double>(particle.position));
    particle.objectives = std::move(evaluation.objectives);
    particle.fidelity = evaluation.fidelity;
    if (!particle.finite_objectives())
      std::fill(particle.objectives.begin(), particle.objectives.end(), inf);
  };

  std::vector<Particle> population =
      initialize_population(bounds, params.population_size, streams.init);
  for (auto& particle : population) evaluate_into(particle);

  Repository repository(params.repository_capacity);
  repository.update(population);
  if (repository.empty())
    throw EvaluationError("no particle produced finite objectives at initialization");

  std::vector<HistoryRow> history;
  history.reserve(params.max_generations + 1);
  history.push_back(make_history_row(0, repository));

  for (std::size_t g = 1; g <= params.max_generations; ++g) {
    const std::size_t gen = g - 1;  // exponent/amplitude index for this round of moves
    for (auto& particle : population) {
      const Particle& leader = select_leader(repository, streams.leader);
      std::vector<double> moved = update_position(particle, leader, gen, params, streams.update);
      particle.position = handle_bounds(std::move(moved), bounds, params.threshold, streams.boundary);
      particle.objectives.clear();
    }
    for (auto& particle : population) evaluate_into(particle);
    repository.update(population);
    history.push_back(make_history_row(g, repository));
  }

  return OptimizeResult{std::move(repository), std::move(history)};
}

}  // namespace momdwa

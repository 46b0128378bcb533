#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "momdwa/errors.hpp"
#include "momdwa/optimizer.hpp"
#include "momdwa/quantum/problems.hpp"
#include "momdwa/quantum/propagate.hpp"
#include "momdwa/quantum/state.hpp"

namespace momdwa {

inline constexpr double k_psd_tolerance = 1e-8;

/// |<final|target>|^2 with the final state normalized first.
inline double fidelity_pure(const quantum::Vector& final_state,
                            const quantum::Vector& target) {
  if (final_state.size() != target.size())
    throw InternalError("fidelity_pure: dimension mismatch");
  const double norm = final_state.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw EvaluationError("fidelity_pure: final state has zero or invalid norm");
  return std::norm(quantum::Complex((final_state / norm).dot(target)));
}

namespace detail {

inline Eigen::VectorXd clipped_eigenvalues(const quantum::Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<quantum::Matrix> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -k_psd_tolerance)
    throw EvaluationError("density matrix is not positive semidefinite");
  return solver.eigenvalues().cwiseMax(0.0);
}

}  // namespace detail

/// Uhlmann expression Tr(sqrt(sqrt(rho) rho_target sqrt(rho))) through
/// Hermitian eigen-decompositions; eigenvalues are clipped at zero before
/// the square roots.
inline double fidelity_mixed(const quantum::Matrix& rho, const quantum::Matrix& rho_target) {
  if (rho.rows() != rho_target.rows() || rho.cols() != rho_target.cols())
    throw InternalError("fidelity_mixed: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<quantum::Matrix> solver(rho);
  if (solver.eigenvalues().minCoeff() < -k_psd_tolerance)
    throw EvaluationError("density matrix is not positive semidefinite");
  const Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const quantum::Matrix sqrt_rho = solver.eigenvectors() *
                                   roots.cast<quantum::Complex>().asDiagonal() *
                                   solver.eigenvectors().adjoint();
  quantum::Matrix inner = sqrt_rho * rho_target * sqrt_rho;
  inner = 0.5 * (inner + inner.adjoint().eval());  // scrub rounding asymmetry
  return detail::clipped_eigenvalues(inner).cwiseSqrt().sum();
}

/// Euclidean distance ||final/||final|| - target||; phase-sensitive by design.
inline double deviation_pure(const quantum::Vector& final_state,
                             const quantum::Vector& target) {
  if (final_state.size() != target.size())
    throw InternalError("deviation_pure: dimension mismatch");
  const double norm = final_state.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw EvaluationError("deviation_pure: final state has zero or invalid norm");
  return (final_state / norm - target).norm();
}

/// Frobenius distance between density matrices.
inline double deviation_mixed(const quantum::Matrix& rho, const quantum::Matrix& rho_target) {
  if (rho.rows() != rho_target.rows() || rho.cols() != rho_target.cols())
    throw InternalError("deviation_mixed: dimension mismatch");
  return (rho - rho_target).norm();
}

/// Left-endpoint sum of |u_m(t_k)| * ||H_m|| * dt over the fine grid.
inline double control_energy(const quantum::FineControls& fine,
                             const quantum::ControlProblem& problem) {
  double total = 0.0;
  for (int m = 0; m < problem.num_controls; ++m) {
    double sum_abs = 0.0;
    for (std::size_t k = 0; k + 1 < fine.points(); ++k)
      sum_abs += std::abs(fine.values[m][k]);
    total += sum_abs * problem.control_norms[m] * fine.dt;
  }
  return total;
}

/// Discrete integral of the squared first derivative of
/// U_m(t) = |u_m(t)| * ||H_m|| over the fine grid.
inline double control_smoothness(const quantum::FineControls& fine,
                                 const quantum::ControlProblem& problem) {
  if (fine.points() < 2)
    throw InternalError("control_smoothness: need at least two grid points");
  double total = 0.0;
  for (int m = 0; m < problem.num_controls; ++m) {
    const double scale = problem.control_norms[m];
    for (std::size_t k = 0; k + 1 < fine.points(); ++k) {
      const double step = (std::abs(fine.values[m][k + 1]) - std::abs(fine.values[m][k])) *
                          scale / fine.dt;
      total += step * step * fine.dt;
    }
  }
  return total;
}

struct EvaluationRecord {
  ObjectiveVector objectives;  // (deviation, energy[, smoothness])
  double fidelity = 0.0;
  double terminal_norm = 0.0;  // Euler drift diagnostic, pre-normalization
};

/// Decode, upsample, propagate with Euler and score one position vector.
inline EvaluationRecord evaluate_quantum(std::span<const double> position,
                                         const quantum::ControlProblem& problem,
                                         int num_objectives, int alpha) {
  if (num_objectives != 2 && num_objectives != 3)
    throw ConfigError("objective count must be 2 or 3");

  const quantum::FineControls fine = quantum::upsample_controls(problem, position, alpha);
  const quantum::Trajectory trajectory = quantum::propagate_euler(problem, fine);

  const quantum::Vector& terminal = trajectory.states.back();
  EvaluationRecord record;
  record.terminal_norm = terminal.norm();
  if (!(record.terminal_norm > 0.0) || !std::isfinite(record.terminal_norm))
    throw EvaluationError("terminal state has zero or invalid norm");
  const quantum::Vector normalized = terminal / record.terminal_norm;

  double deviation;
  if (problem.fidelity_mode == quantum::FidelityMode::Pure) {
    deviation = deviation_pure(normalized, problem.target_state);
    record.fidelity = fidelity_pure(normalized, problem.target_state);
  } else {
    const quantum::Matrix reduced = quantum::partial_trace_field(normalized);
    deviation = deviation_mixed(reduced, problem.target_density);
    record.fidelity = fidelity_mixed(reduced, problem.target_density);
  }

  record.objectives = {deviation, control_energy(fine, problem)};
  if (num_objectives == 3)
    record.objectives.push_back(control_smoothness(fine, problem));
  return record;
}

/// Objective-bundle adapter that feeds quantum evaluations to the optimizer.
/// Evaluation failures (propagation blow-ups, degenerate states) surface as
/// all-infinite objective vectors so the optimizer can quarantine the
/// particle.
class QuantumBundle {
 public:
  QuantumBundle(quantum::ControlProblem problem, int num_objectives, int alpha)
      : problem_(std::move(problem)), num_objectives_(num_objectives), alpha_(alpha) {
    if (num_objectives != 2 && num_objectives != 3)
      throw ConfigError("objective count must be 2 or 3");
    if (alpha < 1) throw ConfigError("interpolation factor must be >= 1");
  }

  std::size_t dimension() const { return problem_.dimension(); }
  Bounds bounds() const { return problem_.search_bounds(); }

  Evaluation evaluate(std::span<const double> position) const {
    try {
      EvaluationRecord record = evaluate_quantum(position, problem_, num_objectives_, alpha_);
      return {std::move(record.objectives), record.fidelity};
    } catch (const EvaluationError&) {
      return {ObjectiveVector(num_objectives_, std::numeric_limits<double>::infinity()), 0.0};
    }
  }

  const quantum::ControlProblem& problem() const { return problem_; }
  int num_objectives() const { return num_objectives_; }
  int alpha() const { return alpha_; }

 private:
  quantum::ControlProblem problem_;
  int num_objectives_;
  int alpha_;
};

}  // namespace momdwa

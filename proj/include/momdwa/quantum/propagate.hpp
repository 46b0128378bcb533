#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "momdwa/errors.hpp"
#include "momdwa/quantum/problems.hpp"
#include "momdwa/spline.hpp"

namespace momdwa::quantum {

/// Control values on the fine grid: alpha*N + 1 uniform points spanning
/// [0, total_time], one row per control.
struct FineControls {
  int alpha = 0;
  double dt = 0.0;
  std::vector<double> times;
  std::vector<std::vector<double>> values;  // M x (alpha*N + 1)

  std::size_t points() const { return times.size(); }
};

/// Decode a control-major position vector (first N entries are control 1's
/// coarse samples) and spline-upsample each control onto the fine grid,
/// clamped to the problem's control bounds.
inline FineControls upsample_controls(const ControlProblem& problem,
                                      std::span<const double> position, int alpha) {
  if (position.size() != problem.dimension())
    throw InternalError("upsample_controls: position length must equal M*N");
  if (alpha < 1) throw ConfigError("interpolation factor must be >= 1");

  FineControls fine;
  fine.alpha = alpha;
  const std::size_t steps =
      static_cast<std::size_t>(alpha) * static_cast<std::size_t>(problem.coarse_samples);
  fine.dt = problem.total_time / static_cast<double>(steps);
  fine.times.resize(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k)
    fine.times[k] = problem.total_time * static_cast<double>(k) / static_cast<double>(steps);

  fine.values.reserve(problem.num_controls);
  const std::size_t n = static_cast<std::size_t>(problem.coarse_samples);
  for (int m = 0; m < problem.num_controls; ++m)
    fine.values.push_back(spline_upsample(position.subspan(m * n, n), alpha,
                                          problem.total_time, problem.control_lower,
                                          problem.control_upper));
  return fine;
}

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
};

/// First-order explicit step psi -> psi - i*H(t_k)*psi*dt on the fine grid.
/// Not norm-preserving; drift is the caller's diagnostic. Throws
/// PropagationError when amplitudes stop being finite.
inline Trajectory propagate_euler(const ControlProblem& problem, const FineControls& fine,
                                  bool renormalize_each_step = false) {
  Trajectory trajectory;
  trajectory.times = fine.times;
  trajectory.states.reserve(fine.points());

  Vector psi = problem.initial_state;
  trajectory.states.push_back(psi);
  const Complex i1(0.0, 1.0);
  Vector derivative(problem.dim);
  for (std::size_t k = 0; k + 1 < fine.points(); ++k) {
    const double t = fine.times[k];
    derivative.setZero();
    for (const auto& term : problem.terms) {
      double factor = term.influence(t, term.theta);
      if (term.control_index >= 0) factor *= fine.values[term.control_index][k];
      if (factor != 0.0) derivative.noalias() += factor * (term.matrix * psi);
    }
    psi -= i1 * fine.dt * derivative;
    if (!psi.allFinite())
      throw PropagationError("non-finite amplitudes during Euler propagation");
    if (renormalize_each_step) psi /= psi.norm();
    trajectory.states.push_back(psi);
  }
  return trajectory;
}

/// Exact piecewise-constant solution: psi -> exp(-i*H(t_k)*dt)*psi with the
/// matrix exponential taken through a Hermitian eigen-decomposition, so every
/// step is unitary. Serves as the testing oracle for the Euler path.
inline Trajectory propagate_expm_oracle(const ControlProblem& problem,
                                        const FineControls& fine) {
  Trajectory trajectory;
  trajectory.times = fine.times;
  trajectory.states.reserve(fine.points());

  Vector psi = problem.initial_state;
  trajectory.states.push_back(psi);
  const Complex i1(0.0, 1.0);
  std::vector<double> u(problem.num_controls);
  for (std::size_t k = 0; k + 1 < fine.points(); ++k) {
    for (int m = 0; m < problem.num_controls; ++m) u[m] = fine.values[m][k];
    const Matrix h = assemble_hamiltonian(problem, u, fine.times[k]);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    const Eigen::VectorXcd phases =
        (-i1 * fine.dt * solver.eigenvalues().cast<Complex>().array()).exp();
    psi = solver.eigenvectors() *
          (phases.array() * (solver.eigenvectors().adjoint() * psi).array()).matrix();
    trajectory.states.push_back(psi);
  }
  return trajectory;
}

}  // namespace momdwa::quantum

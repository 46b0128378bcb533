#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "momdwa/errors.hpp"
#include "momdwa/optimizer.hpp"
#include "momdwa/quantum/state.hpp"

namespace momdwa::quantum {

enum class MatrixNorm { Frobenius, Spectral };

enum class FidelityMode { Pure, Mixed };

inline double matrix_norm(const Matrix& m, MatrixNorm kind) {
  if (kind == MatrixNorm::Frobenius) return m.norm();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

/// One additive Hamiltonian contribution: a constant Hermitian matrix scaled
/// by an influence function of (time, fixed uncertainty parameter), and by a
/// control amplitude when control_index >= 0.
struct HamiltonianTerm {
  Matrix matrix;
  int control_index = -1;  // -1 marks a free (always-on) term
  std::function<double(double t, double theta)> influence;
  double theta = 0.0;
};

/// Immutable description of one control task: Hilbert dimension, control
/// layout (M controls, N coarse samples each), horizon, Hamiltonian terms,
/// initial/target states and how fidelity is measured.
struct ControlProblem {
  std::string name;
  int dim = 0;
  int num_controls = 0;   // M
  int coarse_samples = 0; // N
  double total_time = 1.0;
  double control_lower = -5.0;
  double control_upper = 5.0;
  std::vector<HamiltonianTerm> terms;
  Vector initial_state;
  Vector target_state;    // pure targets (Q1, Q2)
  Matrix target_density;  // mixed target on the reduced space (Q3)
  FidelityMode fidelity_mode = FidelityMode::Pure;
  bool trace_out_field = false;
  std::vector<double> control_norms;  // ||H_m|| per control, fixed at build time

  std::size_t dimension() const {
    return static_cast<std::size_t>(num_controls) * static_cast<std::size_t>(coarse_samples);
  }

  Bounds search_bounds() const {
    return Bounds::uniform(dimension(), control_lower, control_upper);
  }
};

/// H(t) = sum_m u_m f_m(t; theta_m) H_m + sum_f f_f(t; theta_f) H_f.
inline Matrix assemble_hamiltonian(const ControlProblem& problem,
                                   std::span<const double> controls, double t) {
  if (static_cast<int>(controls.size()) != problem.num_controls)
    throw InternalError("assemble_hamiltonian: control vector has wrong length");
  Matrix h = Matrix::Zero(problem.dim, problem.dim);
  for (const auto& term : problem.terms) {
    double factor = term.influence(t, term.theta);
    if (term.control_index >= 0) factor *= controls[term.control_index];
    if (factor != 0.0) h += factor * term.matrix;
  }
  return h;
}

namespace detail {

inline double unit_influence(double, double) { return 1.0; }
inline double theta_influence(double, double theta) { return theta; }

inline void finalize_control_norms(ControlProblem& problem, MatrixNorm kind) {
  problem.control_norms.assign(problem.num_controls, 0.0);
  for (const auto& term : problem.terms)
    if (term.control_index >= 0)
      problem.control_norms[term.control_index] = matrix_norm(term.matrix, kind);
}

}  // namespace detail

struct Q1Settings {
  double total_time = 1.0;
  double control_lower = -5.0;
  double control_upper = 5.0;
  double epsilon = 0.1;  // drive-uncertainty scale on the free term
  double theta0 = 0.0;   // nominal 0 keeps the free influence at 1
  MatrixNorm norm = MatrixNorm::Frobenius;
};

/// V-type three-level state preparation: free term diag(1.5, 1, 1) with
/// influence 1 - epsilon*theta0*cos(t) and four controls coupling the ground
/// level to the two excited levels. Target (0, 1/sqrt2, 1/sqrt2).
inline ControlProblem build_q1(const Q1Settings& s = {}) {
  ControlProblem p;
  p.name = "q1";
  p.dim = 3;
  p.num_controls = 4;
  p.coarse_samples = 10;
  p.total_time = s.total_time;
  p.control_lower = s.control_lower;
  p.control_upper = s.control_upper;
  p.fidelity_mode = FidelityMode::Pure;

  const Complex i1(0.0, 1.0);
  Matrix h0 = Matrix::Zero(3, 3);
  h0(0, 0) = 1.5;
  h0(1, 1) = 1.0;
  h0(2, 2) = 1.0;
  Matrix h1 = Matrix::Zero(3, 3);
  h1(0, 1) = 1.0;
  h1(1, 0) = 1.0;
  Matrix h2 = Matrix::Zero(3, 3);
  h2(0, 1) = -i1;
  h2(1, 0) = i1;
  Matrix h3 = Matrix::Zero(3, 3);
  h3(0, 2) = 1.0;
  h3(2, 0) = 1.0;
  Matrix h4 = Matrix::Zero(3, 3);
  h4(0, 2) = -i1;
  h4(2, 0) = i1;

  const double eps = s.epsilon;
  p.terms.push_back({h0, -1,
                     [eps](double t, double theta) { return 1.0 - eps * theta * std::cos(t); },
                     s.theta0});
  p.terms.push_back({h1, 0, detail::unit_influence, 0.0});
  p.terms.push_back({h2, 1, detail::unit_influence, 0.0});
  p.terms.push_back({h3, 2, detail::unit_influence, 0.0});
  p.terms.push_back({h4, 3, detail::unit_influence, 0.0});

  p.initial_state = Vector::Zero(3);
  p.initial_state(0) = 1.0;
  p.target_state = Vector::Zero(3);
  p.target_state(1) = 1.0 / std::sqrt(2.0);
  p.target_state(2) = 1.0 / std::sqrt(2.0);

  detail::finalize_control_norms(p, s.norm);
  return p;
}

struct Q2Settings {
  double total_time = 1.0;
  double control_lower = -5.0;
  double control_upper = 5.0;
  std::array<double, 5> theta{1.0, 1.0, 1.0, 1.0, 1.0};
  MatrixNorm norm = MatrixNorm::Frobenius;
};

/// Two coupled qubits: five controlled Pauli-product terms (signs as given),
/// no free term, driving |g1 g2> to the maximally entangled
/// (|g1 e2> + |e1 g2>)/sqrt2.
inline ControlProblem build_q2(const Q2Settings& s = {}) {
  ControlProblem p;
  p.name = "q2";
  p.dim = 4;
  p.num_controls = 5;
  p.coarse_samples = 7;
  p.total_time = s.total_time;
  p.control_lower = s.control_lower;
  p.control_upper = s.control_upper;
  p.fidelity_mode = FidelityMode::Pure;

  const Complex i1(0.0, 1.0);
  Matrix id2 = Matrix::Identity(2, 2);
  Matrix sx = Matrix::Zero(2, 2);
  sx(0, 1) = 1.0;
  sx(1, 0) = 1.0;
  Matrix sy = Matrix::Zero(2, 2);
  sy(0, 1) = -i1;
  sy(1, 0) = i1;
  Matrix sz = Matrix::Zero(2, 2);
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;

  const std::array<Matrix, 5> matrices{
      kron(sz, id2), kron(sz, sz), -kron(sx, id2), -kron(sx, sz), -kron(sy, sy)};
  for (int m = 0; m < 5; ++m)
    p.terms.push_back({matrices[m], m, detail::theta_influence, s.theta[m]});

  p.initial_state = Vector::Zero(4);
  p.initial_state(0) = 1.0;
  p.target_state = Vector::Zero(4);
  p.target_state(1) = 1.0 / std::sqrt(2.0);
  p.target_state(2) = 1.0 / std::sqrt(2.0);

  detail::finalize_control_norms(p, s.norm);
  return p;
}

struct Q3Settings {
  double total_time = 1.0;
  double control_lower = -5.0;
  double control_upper = 5.0;
  double omega_a1 = 1.0;     // atomic transition frequencies
  double omega_a2 = 1.0;
  double omega_r = 1.0;      // field frequency
  double coupling_12 = 0.1;  // dipole-dipole interaction
  double coupling_21 = 0.1;
  double nu_1 = 0.1;         // atom-field couplings
  double nu_2 = 0.1;
  MatrixNorm norm = MatrixNorm::Frobenius;
};

/// Two two-level atoms plus a cavity mode truncated to Fock levels {0, 1},
/// ordered atom1 (x) atom2 (x) field (d = 8). Seven controls: the two atomic
/// sigma_z terms, the photon number, the (Hermitian) dipole exchange for each
/// Omega coefficient, and the two Jaynes-Cummings exchanges. The target is
/// the reduced atomic density matrix of (|g1 e2> + |e1 g2>)/sqrt2.
inline ControlProblem build_q3(const Q3Settings& s = {}) {
  ControlProblem p;
  p.name = "q3";
  p.dim = 8;
  p.num_controls = 7;
  p.coarse_samples = 6;
  p.total_time = s.total_time;
  p.control_lower = s.control_lower;
  p.control_upper = s.control_upper;
  p.fidelity_mode = FidelityMode::Mixed;
  p.trace_out_field = true;

  Matrix id2 = Matrix::Identity(2, 2);
  // Basis (|g>, |e>) per atom: ground at index 0 with energy -omega/2.
  Matrix sz = Matrix::Zero(2, 2);
  sz(0, 0) = -1.0;
  sz(1, 1) = 1.0;
  Matrix sp = Matrix::Zero(2, 2);  // |e><g|
  sp(1, 0) = 1.0;
  Matrix sm = Matrix::Zero(2, 2);  // |g><e|
  sm(0, 1) = 1.0;
  Matrix a = Matrix::Zero(2, 2);  // field annihilation, two Fock levels
  a(0, 1) = 1.0;
  Matrix ad = a.adjoint();
  Matrix number = ad * a;  // diag(0, 1)

  const Matrix sz1 = kron(sz, id2, id2);
  const Matrix sz2 = kron(id2, sz, id2);
  const Matrix photon = kron(id2, id2, number);
  const Matrix exchange = kron(sp, sm, id2) + kron(sm, sp, id2);
  const Matrix jc1 = kron(sm, id2, ad) + kron(sp, id2, a);
  const Matrix jc2 = kron(id2, sm, ad) + kron(id2, sp, a);

  const Matrix free_energy = 0.5 * (s.omega_a1 * sz1 + s.omega_a2 * sz2) + s.omega_r * photon;
  const Matrix free_interaction = s.coupling_12 * kron(sp, sm, id2) +
                                  s.coupling_21 * kron(sm, sp, id2) + s.nu_1 * jc1 +
                                  s.nu_2 * jc2;

  p.terms.push_back({free_energy, -1, detail::unit_influence, 0.0});
  p.terms.push_back({free_interaction, -1, detail::unit_influence, 0.0});
  p.terms.push_back({sz1, 0, detail::unit_influence, 0.0});
  p.terms.push_back({sz2, 1, detail::unit_influence, 0.0});
  p.terms.push_back({photon, 2, detail::unit_influence, 0.0});
  p.terms.push_back({exchange, 3, detail::unit_influence, 0.0});
  p.terms.push_back({exchange, 4, detail::unit_influence, 0.0});
  p.terms.push_back({jc1, 5, detail::unit_influence, 0.0});
  p.terms.push_back({jc2, 6, detail::unit_influence, 0.0});

  p.initial_state = Vector::Zero(8);
  p.initial_state(0) = 1.0;  // |g1 g2> (x) |0>

  Vector atomic_target = Vector::Zero(4);
  atomic_target(1) = 1.0 / std::sqrt(2.0);
  atomic_target(2) = 1.0 / std::sqrt(2.0);
  p.target_density = density_from_state(atomic_target);

  detail::finalize_control_norms(p, s.norm);
  return p;
}

}  // namespace momdwa::quantum

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "momdwa/errors.hpp"

namespace momdwa::quantum {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// rho = |psi><psi|.
inline Matrix density_from_state(const Vector& psi) { return psi * psi.adjoint(); }

/// Reduce an atom1 (x) atom2 (x) field state (field truncated to two levels)
/// to the 4x4 atomic density matrix: rho[i][j] = sum_k psi[2i+k] conj(psi[2j+k]).
inline Matrix partial_trace_field(const Vector& psi) {
  if (psi.size() != 8)
    throw InternalError("partial_trace_field expects an 8-dimensional state");
  Matrix rho = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 2; ++k)
        rho(i, j) += psi(2 * i + k) * std::conj(psi(2 * j + k));
  return rho;
}

/// Kronecker product of two dense complex matrices.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

inline Matrix kron(const Matrix& a, const Matrix& b, const Matrix& c) {
  return kron(kron(a, b), c);
}

}  // namespace momdwa::quantum

#pragma once

#include <complex>
#include <Eigen/Dense>

namespace qclone {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Numeric tolerances. Algebraic identities (unitarity, round trips) are held
// to kTolAlgebra; physicality checks (eigenvalue positivity) to kTolPhysical.
inline constexpr double kTolAlgebra = 1e-12;
inline constexpr double kTolPhysical = 1e-10;

inline constexpr double kPi = 3.14159265358979323846;

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline bool is_unitary(const Matrix& u, double tol = kTolAlgebra) {
  if (u.rows() != u.cols()) return false;
  Matrix d = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return max_abs(d) < tol;
}

inline bool is_hermitian(const Matrix& m, double tol = kTolAlgebra) {
  return max_abs(Matrix(m - m.adjoint())) < tol;
}

}  // namespace qclone

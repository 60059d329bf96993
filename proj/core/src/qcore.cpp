#include "qclone/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qclone {

double BlochVector::length() const { return std::sqrt(x * x + y * y + z * z); }

DensityState::DensityState(Matrix rho, std::vector<std::string> labels, bool deviation)
    : rho_(std::move(rho)), labels_(std::move(labels)), deviation_(deviation) {
  const int n = static_cast<int>(labels_.size());
  if (n < 1 || n > 3) throw std::invalid_argument("DensityState: 1..3 qubits supported");
  if (rho_.rows() != (1 << n) || rho_.cols() != (1 << n))
    throw std::invalid_argument("DensityState: dimension does not match qubit count");
}

DensityState DensityState::pure(const Vector& psi, std::vector<std::string> labels) {
  Matrix rho = psi * psi.adjoint();
  return DensityState(std::move(rho), std::move(labels), false);
}

DensityState DensityState::ground(std::vector<std::string> labels) {
  const int d = 1 << labels.size();
  Matrix rho = Matrix::Zero(d, d);
  rho(0, 0) = 1.0;
  return DensityState(std::move(rho), std::move(labels), false);
}

int DensityState::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end())
    throw std::invalid_argument("DensityState: unknown qubit label '" + label + "'");
  return static_cast<int>(it - labels_.begin());
}

void DensityState::check_physical(double tol) const {
  if (!is_hermitian(rho_, kTolAlgebra))
    throw std::invalid_argument("DensityState: not Hermitian");
  const double tr = rho_.trace().real();
  if (deviation_) {
    if (std::abs(tr) > kTolAlgebra)
      throw std::invalid_argument("DensityState: deviation matrix must be traceless");
    return;
  }
  if (std::abs(tr - 1.0) > kTolAlgebra)
    throw std::invalid_argument("DensityState: trace must be 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_);
  if (es.eigenvalues().minCoeff() < -tol)
    throw std::invalid_argument("DensityState: negative eigenvalue");
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix embed_unitary(const Matrix& u, const std::vector<int>& targets, int n_qubits) {
  const int d = 1 << n_qubits;
  const int k = static_cast<int>(targets.size());
  if (u.rows() != (1 << k)) throw std::invalid_argument("embed_unitary: dim mismatch");
  // bit position of qubit q (q = 0 is most significant)
  auto bitpos = [n_qubits](int q) { return n_qubits - 1 - q; };
  Matrix out = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    int sub_i = 0;
    for (int t = 0; t < k; ++t) sub_i = (sub_i << 1) | ((i >> bitpos(targets[t])) & 1);
    for (int sub_j = 0; sub_j < (1 << k); ++sub_j) {
      int j = i;
      for (int t = 0; t < k; ++t) {
        const int bit = (sub_j >> (k - 1 - t)) & 1;
        const int p = bitpos(targets[t]);
        j = (j & ~(1 << p)) | (bit << p);
      }
      out(i, j) = u(sub_i, sub_j);
    }
  }
  return out;
}

DensityState apply_unitary(const DensityState& s, const Matrix& u,
                           const std::vector<std::string>& targets) {
  if (!is_unitary(u, kTolPhysical))
    throw std::invalid_argument("apply_unitary: matrix is not unitary");
  std::vector<int> idx;
  idx.reserve(targets.size());
  for (const auto& t : targets) idx.push_back(s.index_of(t));
  std::vector<int> sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("apply_unitary: duplicate target");
  const Matrix full = embed_unitary(u, idx, s.n_qubits());
  return DensityState(full * s.rho() * full.adjoint(), s.labels(), s.is_deviation());
}

DensityState partial_trace(const DensityState& s, const std::vector<std::string>& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep must be nonempty");
  std::vector<int> kidx;
  for (const auto& l : keep) kidx.push_back(s.index_of(l));
  const int n = s.n_qubits();
  const int nk = static_cast<int>(kidx.size());
  std::vector<int> tidx;  // traced-out qubits
  for (int q = 0; q < n; ++q)
    if (std::find(kidx.begin(), kidx.end(), q) == kidx.end()) tidx.push_back(q);
  auto bitpos = [n](int q) { return n - 1 - q; };
  const int dk = 1 << nk;
  const int dt = 1 << (n - nk);
  Matrix out = Matrix::Zero(dk, dk);
  for (int a = 0; a < dk; ++a)
    for (int b = 0; b < dk; ++b)
      for (int t = 0; t < dt; ++t) {
        int i = 0, j = 0;
        for (int q = 0; q < nk; ++q) {
          i |= ((a >> (nk - 1 - q)) & 1) << bitpos(kidx[q]);
          j |= ((b >> (nk - 1 - q)) & 1) << bitpos(kidx[q]);
        }
        for (int q = 0; q < n - nk; ++q) {
          const int bit = (t >> (n - nk - 1 - q)) & 1;
          i |= bit << bitpos(tidx[q]);
          j |= bit << bitpos(tidx[q]);
        }
        out(a, b) += s.rho()(i, j);
      }
  std::vector<std::string> labels;
  for (int q : kidx) labels.push_back(s.labels()[q]);
  return DensityState(std::move(out), std::move(labels), s.is_deviation());
}

double fidelity(const DensityState& s, const Vector& psi) {
  if (s.n_qubits() != 1) throw std::invalid_argument("fidelity: single-qubit states only");
  if (psi.size() != 2) throw std::invalid_argument("fidelity: psi must be a qubit ket");
  return (psi.adjoint() * s.rho() * psi)(0, 0).real();
}

BlochVector bloch_vector(const DensityState& s) {
  if (s.n_qubits() != 1) throw std::invalid_argument("bloch_vector: single-qubit states only");
  BlochVector b;
  b.x = (s.rho() * pauli_x()).trace().real();
  b.y = (s.rho() * pauli_y()).trace().real();
  b.z = (s.rho() * pauli_z()).trace().real();
  return b;
}

Vector ket_from_angles(double theta, double phi) {
  Vector psi(2);
  psi << std::cos(theta / 2.0),
      std::exp(Complex(0.0, phi)) * std::sin(theta / 2.0);
  return psi;
}

DensityState state_from_angles(double theta, double phi, const std::string& label) {
  return DensityState::pure(ket_from_angles(theta, phi), {label});
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix hadamard() {
  Matrix m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

Matrix ry(double theta) {
  Matrix m(2, 2);
  m << std::cos(theta / 2), -std::sin(theta / 2),
       std::sin(theta / 2), std::cos(theta / 2);
  return m;
}

Matrix rz(double theta) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::exp(Complex(0, -theta / 2));
  m(1, 1) = std::exp(Complex(0, theta / 2));
  return m;
}

Matrix cphase(double lambda) {
  Matrix m = Matrix::Identity(4, 4);
  m(3, 3) = std::exp(Complex(0, lambda));
  return m;
}

Matrix cnot() {
  const Matrix h2 = tensor(Matrix::Identity(2, 2), hadamard());
  return h2 * cphase(kPi) * h2;
}

}  // namespace qclone

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qclone/cloner.hpp"
#include "qclone/qcore.hpp"

using namespace qclone;

namespace {

// Independent index-by-index Kronecker product used as the oracle.
Matrix kron_oracle(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

Matrix random_unitary(int dim, std::mt19937& rng) {
  std::normal_distribution<double> gauss;
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  return q;
}

DensityState random_state(int n_qubits, std::mt19937& rng,
                          std::vector<std::string> labels) {
  std::normal_distribution<double> gauss;
  const int d = 1 << n_qubits;
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityState(rho, std::move(labels));
}

}  // namespace

TEST_CASE("tensor product matches the index oracle") {
  std::mt19937 rng(7);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 5; ++trial) {
    Matrix a(2, 2), b(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) b(i, j) = Complex(gauss(rng), gauss(rng));
    CHECK(max_abs(Matrix(tensor(a, b) - kron_oracle(a, b))) < 1e-14);
  }
}

TEST_CASE("embed_unitary places single-qubit gates at the right bit") {
  // Qubit 0 is the most significant bit: X on qubit 0 of 3 swaps the two
  // index halves.
  Matrix u = embed_unitary(pauli_x(), {0}, 3);
  Matrix expect = kron_oracle(pauli_x(), Matrix::Identity(4, 4));
  CHECK(max_abs(Matrix(u - expect)) < 1e-14);

  u = embed_unitary(pauli_x(), {2}, 3);
  expect = kron_oracle(Matrix::Identity(4, 4), pauli_x());
  CHECK(max_abs(Matrix(u - expect)) < 1e-14);
}

TEST_CASE("embed_unitary on two targets matches explicit construction") {
  std::mt19937 rng(11);
  Matrix u2 = random_unitary(4, rng);
  // Targets (0, 2) of 3 qubits, oracle built element-wise from bit maps.
  Matrix expect = Matrix::Zero(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const int bi = ((i >> 2) & 1) * 2 + (i & 1);
      const int bj = ((j >> 2) & 1) * 2 + (j & 1);
      if (((i >> 1) & 1) == ((j >> 1) & 1)) expect(i, j) = u2(bi, bj);
    }
  CHECK(max_abs(Matrix(embed_unitary(u2, {0, 2}, 3) - expect)) < 1e-13);
}

TEST_CASE("apply_unitary rejects non-unitary matrices and bad targets") {
  DensityState s = DensityState::ground({"P", "A", "B"});
  Matrix bad = 2.0 * pauli_x();
  CHECK_THROWS(apply_unitary(s, bad, {"P"}));
  CHECK_THROWS(apply_unitary(s, pauli_x(), {"Q"}));
  CHECK_THROWS(apply_unitary(s, Matrix(cnot()), {"P", "P"}));
}

TEST_CASE("partial trace agrees with reduced expectations") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    DensityState s = random_state(3, rng, {"P", "A", "B"});
    DensityState a = partial_trace(s, {"A"});
    CHECK(std::abs(a.rho().trace().real() - 1.0) < 1e-12);
    // <sigma_x on A> must match whichever way it is computed.
    const Matrix full_op = embed_unitary(pauli_x(), {1}, 3);
    const double direct = (s.rho() * full_op).trace().real();
    const double reduced = (a.rho() * pauli_x()).trace().real();
    CHECK(std::abs(direct - reduced) < 1e-12);
  }
}

TEST_CASE("partial trace keeps two qubits consistently") {
  std::mt19937 rng(17);
  DensityState s = random_state(3, rng, {"P", "A", "B"});
  DensityState ab = partial_trace(s, {"A", "B"});
  DensityState b_via_ab = partial_trace(ab, {"B"});
  DensityState b_direct = partial_trace(s, {"B"});
  CHECK(max_abs(Matrix(b_via_ab.rho() - b_direct.rho())) < 1e-12);
}

TEST_CASE("bloch vector and state_from_angles round trip") {
  for (double theta : {0.0, 0.7, kPi / 2, 2.5, kPi}) {
    for (double phi : {0.0, 1.2, 4.9}) {
      DensityState s = state_from_angles(theta, phi);
      BlochVector b = bloch_vector(s);
      CHECK(std::abs(b.x - std::sin(theta) * std::cos(phi)) < 1e-12);
      CHECK(std::abs(b.y - std::sin(theta) * std::sin(phi)) < 1e-12);
      CHECK(std::abs(b.z - std::cos(theta)) < 1e-12);
      CHECK(std::abs(b.length() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("fidelity of a pure state with itself is 1") {
  Vector psi = ket_from_angles(1.1, 0.4);
  DensityState s = DensityState::pure(psi, {"P"});
  CHECK(std::abs(fidelity(s, psi) - 1.0) < 1e-12);
}

TEST_CASE("gate algebra") {
  CHECK(is_unitary(hadamard()));
  CHECK(is_unitary(cnot()));
  CHECK(max_abs(Matrix(hadamard() * hadamard() - Matrix::Identity(2, 2))) < 1e-14);
  // ry(pi) maps |0> to |1> up to convention sign.
  Vector zero(2);
  zero << 1, 0;
  Vector out = ry(kPi) * zero;
  CHECK(std::abs(std::abs(out(1)) - 1.0) < 1e-12);
  // rz rotates x toward y (right-handed about z).
  DensityState x = state_from_angles(kPi / 2, 0.0);
  DensityState rotated = apply_unitary(x, rz(kPi / 2), {"P"});
  BlochVector b = bloch_vector(rotated);
  CHECK(std::abs(b.y - 1.0) < 1e-12);
  // cnot flips the target when the control (qubit 0) is set.
  Matrix c = cnot();
  Vector in(4);
  in << 0, 0, 1, 0;  // |10>
  Vector res = c * in;
  CHECK(std::abs(std::abs(res(3)) - 1.0) < 1e-12);
}

TEST_CASE("deviation states admit zero trace, normalized states do not") {
  Matrix dev = 0.5 * pauli_z();
  CHECK_NOTHROW(DensityState(dev, {"P"}, /*deviation=*/true).check_physical());
  CHECK_THROWS(DensityState(dev, {"P"}, /*deviation=*/false).check_physical());
}

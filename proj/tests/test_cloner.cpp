#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qclone/cloner.hpp"

using namespace qclone;

namespace {

// Frozen ancilla preparation target, derived independently: the two-qubit
// state (2|00> + |01> + |10>) / sqrt(6).
const double kAmp0 = 2.0 / std::sqrt(6.0);
const double kAmp1 = 1.0 / std::sqrt(6.0);

}  // namespace

TEST_CASE("preparation stage produces the target ancilla state") {
  Matrix u = prep_unitary();
  CHECK(is_unitary(u, 1e-12));
  Vector anc0 = Vector::Zero(4);
  anc0(0) = 1.0;
  Vector chi = u * anc0;
  CHECK(std::abs(chi(0) - kAmp0) < 1e-12);
  CHECK(std::abs(chi(1) - kAmp1) < 1e-12);
  CHECK(std::abs(chi(2) - kAmp1) < 1e-12);
  CHECK(std::abs(chi(3)) < 1e-12);
}

TEST_CASE("preparation angles are the unique solution in the first quadrant") {
  // Independent oracle: scan theta1 and solve the contract |amp01/amp00| =
  // 1/2, amp11 = 0 by bisection on theta2; the builder's angles must agree.
  auto amps = [](double t1, double t2) {
    const Matrix r1 = tensor(ry(t1), ry(t1));
    const Matrix r2 = tensor(ry(t2), ry(t2));
    Vector v = Vector::Zero(4);
    v(0) = 1.0;
    return Vector(r2 * cphase(kPi) * r1 * v);
  };
  // For the builder's theta1, find theta2 zeroing the |11> amplitude.
  const double t1 = PrepSpec{}.theta1;
  double lo = 0.0, hi = kPi / 4;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = amps(t1, mid)(3).real();
    const double flo = amps(t1, lo)(3).real();
    if ((f < 0) == (flo < 0)) lo = mid;
    else hi = mid;
  }
  const double t2 = 0.5 * (lo + hi);
  CHECK(std::abs(t2 - PrepSpec{}.theta2) < 1e-9);
  // And at that solution the amplitude ratio contract holds.
  Vector v = amps(t1, t2);
  CHECK(std::abs(std::abs(v(1) / v(0)) - 0.5) < 1e-9);
}

TEST_CASE("copy stage acts as the expected basis permutation") {
  // |p, a, b> -> |p^a^b, a^p, b^p>, oracle built bit by bit.
  Matrix u = copy_unitary();
  for (int i = 0; i < 8; ++i) {
    const int p = (i >> 2) & 1, a = (i >> 1) & 1, b = i & 1;
    const int j = ((p ^ a ^ b) << 2) | ((a ^ p) << 1) | (b ^ p);
    for (int k = 0; k < 8; ++k) {
      const double expect = k == j ? 1.0 : 0.0;
      CHECK(std::abs(std::abs(u(k, i)) - expect) < 1e-12);
    }
  }
}

TEST_CASE("clone fidelity is 5/6 for arbitrary pure inputs") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const double theta = std::acos(2.0 * uni(rng) - 1.0);
    const double phi = 2.0 * kPi * uni(rng);
    CloneOutput out = clone_angles(theta, phi);
    CHECK(std::abs(out.fidelity_a - 5.0 / 6.0) < 1e-12);
    CHECK(std::abs(out.fidelity_b - 5.0 / 6.0) < 1e-12);
  }
}

TEST_CASE("clones shrink the Bloch vector by 2/3 without rotating it") {
  for (double theta : {0.0, 0.4, kPi / 2, 2.8, kPi}) {
    for (double phi : {0.0, 2.1, 5.0}) {
      CloneOutput out = clone_angles(theta, phi);
      const double n[3] = {std::sin(theta) * std::cos(phi),
                           std::sin(theta) * std::sin(phi), std::cos(theta)};
      for (const DensityState* c : {&out.clone_a, &out.clone_b}) {
        BlochVector b = bloch_vector(*c);
        CHECK(std::abs(b.x - 2.0 / 3.0 * n[0]) < 1e-12);
        CHECK(std::abs(b.y - 2.0 / 3.0 * n[1]) < 1e-12);
        CHECK(std::abs(b.z - 2.0 / 3.0 * n[2]) < 1e-12);
      }
    }
  }
}

TEST_CASE("cloning a mixed input matches the channel form") {
  // channel(rho) = (2/3) rho + (1/3) 1/2, checked on a partly mixed state.
  Matrix rho = 0.5 * Matrix::Identity(2, 2) + 0.3 * 0.5 * pauli_x() +
               0.1 * 0.5 * pauli_z();
  CloneOutput out = clone(DensityState(rho, {"P"}));
  Matrix expect = (2.0 / 3.0) * rho + (1.0 / 3.0) * 0.5 * Matrix::Identity(2, 2);
  CHECK(max_abs(Matrix(out.clone_a.rho() - expect)) < 1e-12);
  CHECK(max_abs(Matrix(out.clone_b.rho() - expect)) < 1e-12);
}

TEST_CASE("channel matrices") {
  Eigen::Matrix4d m = clone_channel_matrix();
  Eigen::Matrix4d target = Eigen::Matrix4d::Zero();
  target(0, 0) = 1.0;
  for (int i = 1; i < 4; ++i) target(i, i) = 2.0 / 3.0;
  CHECK((m - target).cwiseAbs().maxCoeff() < 1e-10);
  // The anti-clone channel is also a linear map; record its scaling on z.
  Eigen::Matrix4d anti = anticlone_channel_matrix();
  CHECK(std::abs(anti(1, 0)) < 1e-10);  // no offset
  CHECK(std::abs(anti(2, 0)) < 1e-10);
  CHECK(std::abs(anti(3, 0)) < 1e-10);
}

TEST_CASE("expected observable signal pattern") {
  IdealSignal sig = ideal_signal(kPi / 2, 0.0);
  CHECK(std::abs(sig.s_a - Complex(2.0 / 3.0, 0.0)) < 1e-12);
  CHECK(std::abs(sig.lines_a[0] - Complex(1.0 / 3.0, 0.0)) < 1e-12);
  CHECK(std::abs(sig.lines_a[1]) < 1e-12);
  CHECK(std::abs(sig.lines_a[2]) < 1e-12);
  CHECK(std::abs(sig.lines_a[3] - Complex(1.0 / 3.0, 0.0)) < 1e-12);
  // The full-simulation signal agrees with the closed form at other angles.
  IdealSignal sig2 = ideal_signal(0.7, 2.0);
  CloneOutput out = clone_angles(0.7, 2.0);
  BlochVector b = bloch_vector(out.clone_a);
  CHECK(std::abs(sig2.s_a - Complex(b.x, b.y)) < 1e-12);
}

TEST_CASE("clone rejects multi-qubit and unphysical inputs") {
  CHECK_THROWS(clone(DensityState::ground({"P", "A"})));
  Matrix bad = Matrix::Identity(2, 2);  // trace 2
  CHECK_THROWS(clone(DensityState(bad, {"P"})));
}

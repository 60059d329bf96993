#include "qclone/cloner.hpp"

#include <cmath>
#include <stdexcept>

namespace qclone {

namespace {

Matrix embed2(const Matrix& u, int a, int b) {
  return embed_unitary(u, {a, b}, 3);
}

}  // namespace

Matrix prep_unitary(const PrepSpec& spec) {
  // ry(theta1) on both ancillas, controlled-pi, ry(theta2) on both.
  const Matrix r1 = tensor(ry(spec.theta1), ry(spec.theta1));
  const Matrix r2 = tensor(ry(spec.theta2), ry(spec.theta2));
  Matrix u = r2 * cphase(kPi) * r1;
  // Phase convention: first nonzero amplitude of u|00> real positive.
  for (int i = 0; i < 4; ++i) {
    if (std::abs(u(i, 0)) > kTolPhysical) {
      u *= std::conj(u(i, 0)) / std::abs(u(i, 0));
      break;
    }
  }
  return u;
}

Matrix copy_unitary() {
  // CNOT(c->t) = (1_t H_t) cphase(pi)_{c,t} (1_t H_t), mirroring the
  // figure-level gate set.  Qubits: P=0, A=1, B=2.
  const Matrix h = hadamard();
  auto cnot_on = [&](int c, int t) -> Matrix {
    const Matrix ht = embed_unitary(h, {t}, 3);
    return ht * embed2(cphase(kPi), c, t) * ht;
  };
  return cnot_on(2, 0) * cnot_on(1, 0) * cnot_on(0, 2) * cnot_on(0, 1);
}

CloneOutput clone(const DensityState& input) {
  if (input.n_qubits() != 1) throw std::invalid_argument("clone: single-qubit input");
  input.check_physical();
  const Matrix prep = prep_unitary();
  Vector anc0 = Vector::Zero(4);
  anc0(0) = 1.0;
  const Vector chi = prep * anc0;
  const Matrix rho_anc = chi * chi.adjoint();
  Matrix rho_full = tensor(input.rho(), rho_anc);
  const Matrix u = copy_unitary();
  rho_full = u * rho_full * u.adjoint();
  DensityState full(std::move(rho_full), {"P", "A", "B"});
  CloneOutput out{full, partial_trace(full, {"A"}), partial_trace(full, {"B"}),
                  partial_trace(full, {"P"})};
  const BlochVector b_in = bloch_vector(input);
  const double len = b_in.length();
  if (len > 1.0 - kTolPhysical) {
    // pure input: fidelity against the input ket
    const double theta = std::acos(std::clamp(b_in.z, -1.0, 1.0));
    const double phi = std::atan2(b_in.y, b_in.x);
    const Vector psi = ket_from_angles(theta, phi);
    out.fidelity_a = fidelity(out.clone_a, psi);
    out.fidelity_b = fidelity(out.clone_b, psi);
  } else {
    out.fidelity_a = out.fidelity_b = 0.0;  // undefined for mixed inputs
  }
  return out;
}

CloneOutput clone_angles(double theta, double phi) {
  return clone(state_from_angles(theta, phi));
}

IdealSignal ideal_signal(double theta, double phi) {
  IdealSignal sig;
  const Complex transverse(std::sin(theta) * std::cos(phi),
                           std::sin(theta) * std::sin(phi));
  // Eq-pattern: coefficient 1/3 on the two spectator-aligned lines
  // (other proton and P both |0> or both |1>), zero on the cross lines.
  sig.lines_a = {transverse / 3.0, Complex(0, 0), Complex(0, 0), transverse / 3.0};
  sig.lines_b = sig.lines_a;
  sig.s_a = sig.lines_a[0] + sig.lines_a[1] + sig.lines_a[2] + sig.lines_a[3];
  sig.s_b = sig.s_a;
  return sig;
}

namespace {

Eigen::Matrix4d probe_channel(const char* keep) {
  // Probe the affine Bloch map from the identity and the three axis states.
  auto bloch_out = [&](const DensityState& in) {
    CloneOutput c = clone(in);
    const DensityState& red = std::string(keep) == "P" ? c.anti
                              : std::string(keep) == "A" ? c.clone_a
                                                         : c.clone_b;
    return bloch_vector(red);
  };
  Matrix half = Matrix::Identity(2, 2) * 0.5;
  const BlochVector off = bloch_out(DensityState(half, {"P"}));
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = 1.0;
  m(1, 0) = off.x;
  m(2, 0) = off.y;
  m(3, 0) = off.z;
  const double axes[3][2] = {{kPi / 2, 0.0}, {kPi / 2, kPi / 2}, {0.0, 0.0}};
  for (int k = 0; k < 3; ++k) {
    const BlochVector b = bloch_out(state_from_angles(axes[k][0], axes[k][1]));
    m(1, k + 1) = b.x - off.x;
    m(2, k + 1) = b.y - off.y;
    m(3, k + 1) = b.z - off.z;
  }
  return m;
}

}  // namespace

Eigen::Matrix4d clone_channel_matrix() { return probe_channel("A"); }

Eigen::Matrix4d anticlone_channel_matrix() { return probe_channel("P"); }

}  // namespace qclone

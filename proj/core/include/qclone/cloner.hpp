#pragma once

// The ideal gate-level 1 -> 2 approximate cloning network: ancilla
// preparation stage, copy stage, the full cloning map, and the expected
// transverse-signal calculator used to cross check the NMR pipeline.

#include <array>

#include "qclone/qcore.hpp"

namespace qclone {

// Preparation-stage parameters.  theta1/theta2 are the rotation angles of
// the two proton pulses (both ancillas rotated together), with a
// controlled-pi phase gate between them.
struct PrepSpec {
  double theta1 = std::asin(1.0 / std::sqrt(3.0));
  double theta2 = kPi / 12.0;
};

struct CloneOutput {
  DensityState full;     // 3 qubits, order P, A, B
  DensityState clone_a;  // reduced state of A
  DensityState clone_b;  // reduced state of B
  DensityState anti;     // reduced state of P (approximate transpose)
  double fidelity_a = 0.0;
  double fidelity_b = 0.0;
};

// 4x4 unitary on the ancillas (A, B).  prep_unitary|00> is the ancilla
// preparation state (2,1,1,0)/sqrt(6); first nonzero amplitude real positive.
Matrix prep_unitary(const PrepSpec& spec = {});

// The copy stage on (P, A, B): CNOT(P->A) CNOT(P->B) CNOT(A->P) CNOT(B->P),
// each CNOT realized as Hadamard-conjugated controlled-pi.
Matrix copy_unitary();

// Clones a normalized single-qubit state.  Reduced clones satisfy
// clone = (2/3) input + (1/3) 1/2.
CloneOutput clone(const DensityState& input);
CloneOutput clone_angles(double theta, double phi);

struct IdealSignal {
  Complex s_a;  // multiplet-integrated transverse signal of spin A
  Complex s_b;
  // Per-line coefficients before trace-out: for each spin's four lines,
  // indexed by the (other proton, P) spectator bits {00,01,10,11}.
  std::array<Complex, 4> lines_a;
  std::array<Complex, 4> lines_b;
};

// Expected observable signal for input direction (theta, phi):
// S_A = S_B = (2/3)(sin t cos p + i sin t sin p), carried entirely by the
// spectator-aligned (00 and 11) lines with coefficient 1/3 each.
IdealSignal ideal_signal(double theta, double phi);

// The single-clone channel as an affine Bloch-space map, probed from basis
// inputs.  Row/col 0 is the affine part: M(0,0) = 1, M(i,0) the offset.
Eigen::Matrix4d clone_channel_matrix();

// Same probe applied to the anti-clone (qubit P); recorded, not asserted.
Eigen::Matrix4d anticlone_channel_matrix();

}  // namespace qclone

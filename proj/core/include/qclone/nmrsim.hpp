#pragma once

// Density-matrix pulse simulator for the three-spin system: rotating-frame
// Hamiltonian, hard pulses, jump-and-return selectives (real or idealised),
// gradients modelled as frequency-labelled state components, z-filters and
// product-basis relaxation.  States are 8x8 deviation matrices unless noted.

#include <array>
#include <map>

#include "qclone/qcore.hpp"
#include "qclone/sequence.hpp"

namespace qclone {

struct RunOptions {
  bool relaxation = false;       // product-basis T1/T2 during delays
  bool ideal_selective = false;  // replace jump-and-return by its exact limit
  bool full_coupling = false;    // full (not secular) J for the A-B pair
  double b1_error = 0.0;         // fractional flip-angle error on hard pulses
  double gradient_spread = 25.0; // std-dev of the gradient strength ensemble
  double relax_step_s = 1e-3;    // split-step size for relaxed evolution
};

// Rotating-frame Hamiltonian in rad/s.  Secular form keeps 2 pi J Iz Iz for
// every pair; full form upgrades the homonuclear A-B pair to 2 pi J I.I.
Matrix hamiltonian(const SpinSystem& sys, bool full_coupling = false);

Matrix free_evolution_unitary(const SpinSystem& sys, double t, bool full_coupling = false);

// Hard pulse exp(-i flip sum_k I_k,phase) over the channel's spins
// (H drives A and B together, P drives P alone).
Matrix hard_pulse_unitary(Channel channel, double flip, double phase);

Matrix z_rotation_unitary(int spin, double angle);

// Exact limit of the jump-and-return composite: a clean 90 on the target at
// the requested phase with known z-rotations on target and spectator.
Matrix jump_return_ideal_unitary(int target, double phase);

// Weighted z-magnetisation per basis state; gradients dephase coherences in
// proportion to the difference of these weights (P weighted by the
// transmitter-frequency ratio).
std::array<double, 8> coherence_weights(const SpinSystem& sys);

// One relaxation step of duration dt applied to a deviation matrix:
// T2 decay on transverse product terms, T1 decay on longitudinal ones.
// Thermal recovery (toward r P_z + A_z + B_z) is returned separately so the
// caller can route it to the unlabelled gradient component.
Matrix relax_decay(const Matrix& rho, const SpinSystem& sys, double dt);
Matrix relax_recovery(const SpinSystem& sys, double dt);

// Run a pulse program on an initial deviation matrix and return the
// gradient-ensemble-averaged final deviation matrix.
Matrix run_sequence(const Matrix& initial, const Sequence& seq, const SpinSystem& sys,
                    const RunOptions& opts = {});

// Net unitary of a program containing only unitary events (pulses, delays,
// jump-and-returns, z-rotations); throws on gradients, crushes or z-filters.
Matrix sequence_unitary(const Sequence& seq, const SpinSystem& sys,
                        const RunOptions& opts = {});

// Clone an input spin state given by Bloch angles through the physical pulse
// program, starting from the deviation state n.sigma/2 x |00><00|.
struct PulseCloneResult {
  Matrix full;  // final 8x8 deviation matrix
  BlochVector bloch_a, bloch_b;
  double fidelity_a = 0.0, fidelity_b = 0.0;
};

PulseCloneResult clone_pulse(const SpinSystem& sys, double theta, double phi,
                             const RunOptions& opts = {}, double eps90_scale = 0.9);

// Run the purification program on the thermal deviation state and report how
// close the result is to a pure multiple of P_z x |00><00|.
struct PurificationResult {
  Matrix full;
  double coefficient = 0.0;  // amplitude of the target component
  double residual = 0.0;     // max-abs of what remains after removing it
};

PurificationResult purify_thermal(const SpinSystem& sys, const RunOptions& opts = {},
                                  double eps90_scale = 0.9, int n_zfilter_delays = 8);

}  // namespace qclone

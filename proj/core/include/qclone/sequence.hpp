#pragma once

// Timed event-list representation of the pulse programs, plus the builders
// that compile the gate network into hard pulses, delays, jump-and-return
// blocks, gradients and frame z-rotations.

#include <string>
#include <variant>
#include <vector>

#include "qclone/spin_system.hpp"

namespace qclone {

enum class Channel { H, P };  // H drives A and B together; P drives P

struct HardPulse {
  Channel channel = Channel::H;
  double flip = 0.0;   // radians
  double phase = 0.0;  // radians, axis cos(phase) x + sin(phase) y
};

struct Delay {
  double duration = 0.0;  // seconds
};

// Spin-selective 90: hard 45(phase) - eps90 - hard 45(phase +/- 90), the
// sign selecting the proton at +delta_nu (A) or -delta_nu (B).
struct JumpReturn90 {
  int target = 1;  // 1 = A, 2 = B
  double eps90 = 0.0;
  double phase = 0.0;
};

struct Gradient {
  double area = 0.0;  // phase per unit weighted coherence order
};

// Variable delay + crush, averaged over the delay set.
struct ZFilter {
  std::vector<double> delays;
};

struct Crush {};

// Frame z-rotation, zero duration.
struct ZRotation {
  int spin = 0;  // 0 = P, 1 = A, 2 = B
  double angle = 0.0;
};

using PulseEvent =
    std::variant<HardPulse, Delay, JumpReturn90, Gradient, ZFilter, Crush, ZRotation>;

struct Sequence {
  std::string name;
  std::vector<PulseEvent> events;
  // Derived delays, stamped at build time.
  double tau_ab = 0.0;  // 1/(4 J_AB)
  double tau_ap = 0.0;  // 1/(8 J_AP)
  double tau_bp = 0.0;  // 1/(8 J_BP)
  double eps90 = 0.0;   // scale / (4 delta_nu)

  void append(const Sequence& other);
  void push(PulseEvent e) { events.push_back(std::move(e)); }
};

// --- Builders -------------------------------------------------------------

Sequence derived_delays(const SpinSystem& sys, double eps90_scale);

// Selective 90 about the axis at `axis` on the target proton (1 = A, 2 = B),
// as a jump-and-return block with frame corrections.
Sequence selective90(const SpinSystem& sys, int target, double axis, double eps90_scale);
// Selective 180, two phase-stepped jump-and-return blocks.
Sequence selective180(const SpinSystem& sys, int target, double axis, double eps90_scale);

// The echo core: simultaneous coupling elements of the PA and PB
// controlled phase shifts, offsets and J_AB refocused.
Sequence echo_sequence(const SpinSystem& sys, double eps90_scale = 0.9);

// Full cloning program: ancilla preparation then copy stage.
Sequence cloning_sequence(const SpinSystem& sys, double eps90_scale = 0.9);

// Purification program: pre-crush, cat, ratioed gradient pair, anticat,
// z-filter with `n_zfilter_delays` delays over one zero-quantum beat.
Sequence purification_sequence(const SpinSystem& sys, double eps90_scale = 0.9,
                               int n_zfilter_delays = 8);

// --- Declarative text format ---------------------------------------------
// One event per line; angles in degrees, durations in seconds:
//   pulse  <H|P> <flip_deg> <phase_deg>
//   delay  <seconds>
//   jr     <A|B> <eps90_s> <phase_deg>
//   grad   <area>
//   crush
//   zrot   <P|A|B> <angle_deg>
//   zfilter <d0_s> <d1_s> ...

Sequence parse_sequence(const std::string& text, const std::string& name = "");
Sequence load_sequence(const std::string& path);
std::string format_sequence(const Sequence& seq);
void save_sequence(const Sequence& seq, const std::string& path);

}  // namespace qclone

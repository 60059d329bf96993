#pragma once

// Three-spin system parameters: offsets, J couplings, relaxation times and
// the P/H transmitter frequency ratio.  Spin order is P, A, B throughout.

#include <array>
#include <map>
#include <string>

#include "qclone/types.hpp"

namespace qclone {

struct SpinSystem {
  std::array<std::string, 3> labels = {"P", "A", "B"};
  std::array<double, 3> offset_hz = {0.0, 104.0, -104.0};
  double j_pa_hz = 9.1;
  double j_pb_hz = 11.3;
  double j_ab_hz = 14.3;
  std::array<double, 3> t1_s = {3.8, 17.6, 16.9};
  std::array<double, 3> t2_s = {0.72, 1.82, 1.82};
  // Transmitter frequencies; their ratio weights P in gradient dephasing.
  double freq_p_mhz = 242.9458642;
  double freq_h_mhz = 600.1517482;

  double ratio() const { return freq_p_mhz / freq_h_mhz; }
  // Proton offset half-splitting |nu_A - nu_B| / 2 used by jump-and-return.
  double delta_nu_hz() const { return (offset_hz[1] - offset_hz[2]) / 2.0; }
  double j_between(int k, int l) const;
  // Gradient-pair strength ratio (2 - r) / (2 + r).
  double gradient_ratio() const { return (2.0 - ratio()) / (2.0 + ratio()); }

  void validate() const;  // throws on nonphysical parameters

  static SpinSystem table1() { return SpinSystem{}; }
};

// Key-value config I/O (lines of "key = value", '#' comments).  Unknown
// keys are rejected unless `extra_keys` is given, in which case they are
// collected there (run options share the config file with the spin system).
SpinSystem load_spin_system(const std::string& path,
                            std::map<std::string, double>* extra_keys = nullptr);
void save_spin_system(const SpinSystem& sys, const std::string& path);

}  // namespace qclone

#pragma once

// The acceptance checks, shared by the CLI `validate` verb and the
// acceptance test binary.  Each check returns a pass/fail result with the
// measured values; one check may legitimately downgrade to a reported
// observation (see selective-pulse shortening below).

#include <string>
#include <vector>

#include "qclone/sweep.hpp"

namespace qclone {

struct CriterionResult {
  std::string id;      // "1", "2", ..., "8a", "8b", "8c", "9", "10"
  std::string name;
  bool pass = false;
  bool downgraded = false;  // reported as an observation rather than a gate
  std::string detail;       // measured values
};

struct ValidateConfig {
  SpinSystem sys;
  std::string golden_dir;   // checked-in surface goldens
  std::string scratch_dir;  // writable directory for emitted files
  double eps90_scale = 0.9;
};

// Deviation of the real jump-and-return selective 90 from its ideal limit,
// averaged over both targets and two axes (global phase removed).
double selective_error_metric(const SpinSystem& sys, double eps90_scale);

CriterionResult check_universal_fidelity();                     // 1
CriterionResult check_bloch_shrink();                           // 2
CriterionResult check_mixed_state_channel();                    // 3
CriterionResult check_observable_decomposition();               // 4
CriterionResult check_gradient_filter(const SpinSystem& sys);   // 5
CriterionResult check_pulse_equivalence(const ValidateConfig&); // 6
CriterionResult check_surfaces(const ValidateConfig&);          // 7
CriterionResult check_line_asymmetry(const ValidateConfig&);    // 8a
CriterionResult check_relaxation_direction(const ValidateConfig&); // 8b
CriterionResult check_pulse_shortening(const ValidateConfig&);  // 8c
CriterionResult check_purification(const ValidateConfig&);      // 9
CriterionResult check_determinism(const ValidateConfig&);       // 10

std::vector<CriterionResult> run_acceptance(const ValidateConfig& cfg);

}  // namespace qclone

#pragma once

// Bloch-grid sweep harness: runs the cloner over the 13 x 24 grid of input
// states (theta 0..180, phi 0..345, 15 degree spacing), in the ideal
// gate-level or the physical pulse-level engine, and writes deterministic
// CSV / JSON / matrix surface files.

#include <string>
#include <vector>

#include "qclone/nmrsim.hpp"

namespace qclone {

inline constexpr int kSweepThetaCount = 13;
inline constexpr int kSweepPhiCount = 24;
inline constexpr double kSweepStepDeg = 15.0;

struct SweepRecord {
  double theta_deg = 0.0;
  double phi_deg = 0.0;
  Complex integral_a;  // multiplet-integrated transverse signal of clone A
  Complex integral_b;
  double fidelity_a = 0.0;
  double fidelity_b = 0.0;
};

struct SweepOptions {
  bool pulse_mode = false;
  RunOptions run;             // pulse-mode engine options
  double eps90_scale = 0.9;
  int workers = 1;
};

// 312 records in theta-major order; independent of worker count.
std::vector<SweepRecord> run_sweep(const SpinSystem& sys, const SweepOptions& opts);

// CSV: header "theta_deg,phi_deg,re_a,im_a,re_b,im_b,fid_a,fid_b".
void write_sweep_csv(const std::vector<SweepRecord>& records, const std::string& path);
// JSON: array of full records under "records" plus grid metadata.
void write_sweep_json(const std::vector<SweepRecord>& records, const std::string& path,
                      const std::string& mode);
// Four matrix surface files (re_a, im_a, re_b, im_b): rows = theta values,
// columns = phi values, plain whitespace-separated numbers.
void write_surface_files(const std::vector<SweepRecord>& records,
                         const std::string& directory, const std::string& prefix);

}  // namespace qclone

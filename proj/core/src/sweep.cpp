#include "qclone/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "qclone/cloner.hpp"

namespace qclone {

namespace {

SweepRecord sweep_point_ideal(int it, int ip) {
  SweepRecord rec;
  rec.theta_deg = it * kSweepStepDeg;
  rec.phi_deg = ip * kSweepStepDeg;
  const double theta = rec.theta_deg * kPi / 180.0;
  const double phi = rec.phi_deg * kPi / 180.0;
  CloneOutput out = clone_angles(theta, phi);
  const BlochVector ba = bloch_vector(out.clone_a);
  const BlochVector bb = bloch_vector(out.clone_b);
  rec.integral_a = Complex(ba.x, ba.y);
  rec.integral_b = Complex(bb.x, bb.y);
  rec.fidelity_a = out.fidelity_a;
  rec.fidelity_b = out.fidelity_b;
  return rec;
}

SweepRecord sweep_point_pulse(int it, int ip, const SpinSystem& sys,
                              const SweepOptions& opts, const Matrix* precomputed_u) {
  SweepRecord rec;
  rec.theta_deg = it * kSweepStepDeg;
  rec.phi_deg = ip * kSweepStepDeg;
  const double theta = rec.theta_deg * kPi / 180.0;
  const double phi = rec.phi_deg * kPi / 180.0;
  if (precomputed_u) {
    // Relaxation-free programs are a fixed unitary; conjugate directly.
    const double nx = std::sin(theta) * std::cos(phi);
    const double ny = std::sin(theta) * std::sin(phi);
    const double nz = std::cos(theta);
    Matrix p_dev = 0.5 * (nx * pauli_x() + ny * pauli_y() + nz * pauli_z());
    Matrix ground = Matrix::Zero(4, 4);
    ground(0, 0) = 1.0;
    Matrix out = *precomputed_u * tensor(p_dev, ground) * precomputed_u->adjoint();
    DensityState dev(std::move(out), {"P", "A", "B"}, /*deviation=*/true);
    const BlochVector ba = bloch_vector(partial_trace(dev, {"A"}));
    const BlochVector bb = bloch_vector(partial_trace(dev, {"B"}));
    rec.integral_a = Complex(ba.x, ba.y);
    rec.integral_b = Complex(bb.x, bb.y);
    rec.fidelity_a = 0.5 * (1.0 + nx * ba.x + ny * ba.y + nz * ba.z);
    rec.fidelity_b = 0.5 * (1.0 + nx * bb.x + ny * bb.y + nz * bb.z);
    return rec;
  }
  PulseCloneResult res = clone_pulse(sys, theta, phi, opts.run, opts.eps90_scale);
  rec.integral_a = Complex(res.bloch_a.x, res.bloch_a.y);
  rec.integral_b = Complex(res.bloch_b.x, res.bloch_b.y);
  rec.fidelity_a = res.fidelity_a;
  rec.fidelity_b = res.fidelity_b;
  return rec;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SpinSystem& sys, const SweepOptions& opts) {
  if (opts.workers < 1) throw std::invalid_argument("run_sweep: workers must be >= 1");
  const int n = kSweepThetaCount * kSweepPhiCount;
  std::vector<SweepRecord> records(n);

  Matrix u;
  const Matrix* u_ptr = nullptr;
  if (opts.pulse_mode && !opts.run.relaxation) {
    u = sequence_unitary(cloning_sequence(sys, opts.eps90_scale), sys, opts.run);
    u_ptr = &u;
  }

  std::atomic<int> next{0};
  auto work = [&] {
    for (int idx = next.fetch_add(1); idx < n; idx = next.fetch_add(1)) {
      const int it = idx / kSweepPhiCount;
      const int ip = idx % kSweepPhiCount;
      records[idx] = opts.pulse_mode ? sweep_point_pulse(it, ip, sys, opts, u_ptr)
                                     : sweep_point_ideal(it, ip);
    }
  };
  if (opts.workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < opts.workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return records;
}

namespace {

std::string fmt(double v) {
  // Normalize signed zero so output files are stable across code paths.
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  return out;
}

}  // namespace

void write_sweep_csv(const std::vector<SweepRecord>& records, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "theta_deg,phi_deg,re_a,im_a,re_b,im_b,fid_a,fid_b\n";
  for (const auto& r : records) {
    out << fmt(r.theta_deg) << ',' << fmt(r.phi_deg) << ',' << fmt(r.integral_a.real())
        << ',' << fmt(r.integral_a.imag()) << ',' << fmt(r.integral_b.real()) << ','
        << fmt(r.integral_b.imag()) << ',' << fmt(r.fidelity_a) << ','
        << fmt(r.fidelity_b) << '\n';
  }
}

void write_sweep_json(const std::vector<SweepRecord>& records, const std::string& path,
                      const std::string& mode) {
  nlohmann::json j;
  j["mode"] = mode;
  j["grid"] = {{"theta_count", kSweepThetaCount},
               {"phi_count", kSweepPhiCount},
               {"step_deg", kSweepStepDeg}};
  j["records"] = nlohmann::json::array();
  for (const auto& r : records) {
    j["records"].push_back({{"theta_deg", r.theta_deg},
                            {"phi_deg", r.phi_deg},
                            {"re_a", r.integral_a.real()},
                            {"im_a", r.integral_a.imag()},
                            {"re_b", r.integral_b.real()},
                            {"im_b", r.integral_b.imag()},
                            {"fid_a", r.fidelity_a},
                            {"fid_b", r.fidelity_b}});
  }
  std::ofstream out = open_out(path);
  out << j.dump(2) << "\n";
}

void write_surface_files(const std::vector<SweepRecord>& records,
                         const std::string& directory, const std::string& prefix) {
  if (records.size() != kSweepThetaCount * kSweepPhiCount)
    throw std::invalid_argument("write_surface_files: expected the full grid");
  const struct {
    const char* name;
    double (*get)(const SweepRecord&);
  } surfaces[4] = {
      {"re_a", [](const SweepRecord& r) { return r.integral_a.real(); }},
      {"im_a", [](const SweepRecord& r) { return r.integral_a.imag(); }},
      {"re_b", [](const SweepRecord& r) { return r.integral_b.real(); }},
      {"im_b", [](const SweepRecord& r) { return r.integral_b.imag(); }},
  };
  for (const auto& s : surfaces) {
    std::ofstream out = open_out(directory + "/" + prefix + "_" + s.name + ".dat");
    for (int it = 0; it < kSweepThetaCount; ++it) {
      for (int ip = 0; ip < kSweepPhiCount; ++ip) {
        if (ip) out << ' ';
        out << fmt(s.get(records[it * kSweepPhiCount + ip]));
      }
      out << '\n';
    }
  }
}

}  // namespace qclone

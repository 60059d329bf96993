// Command-line front end: single-shot cloning runs, the Bloch-grid sweep,
// the acceptance checks and spectrum export.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qclone/cloner.hpp"
#include "qclone/spectra.hpp"
#include "qclone/sweep.hpp"
#include "qclone/validate.hpp"

namespace {

using namespace qclone;

struct CliConfig {
  SpinSystem sys;
  std::string mode = "ideal";  // ideal | pulse
  RunOptions run;
  double eps90_scale = 0.9;
  int workers = 1;
  std::string out_dir = "out";
  std::string format = "csv";  // csv | json
};

void apply_config_file(CliConfig& cfg, const std::string& path) {
  std::map<std::string, double> extra;
  cfg.sys = load_spin_system(path, &extra);
  auto take = [&](const char* key, auto& field) {
    auto it = extra.find(key);
    if (it != extra.end()) {
      field = static_cast<std::decay_t<decltype(field)>>(it->second);
      extra.erase(it);
    }
  };
  double pulse_mode = cfg.mode == "pulse" ? 1.0 : 0.0;
  take("pulse_mode", pulse_mode);
  cfg.mode = pulse_mode != 0.0 ? "pulse" : "ideal";
  bool b;
  b = cfg.run.relaxation; take("relaxation", b); cfg.run.relaxation = b;
  b = cfg.run.ideal_selective; take("ideal_selective", b); cfg.run.ideal_selective = b;
  take("eps90_scale", cfg.eps90_scale);
  take("b1_error", cfg.run.b1_error);
  take("gradient_spread", cfg.run.gradient_spread);
  take("workers", cfg.workers);
  if (!extra.empty())
    throw std::runtime_error(path + ": unknown key '" + extra.begin()->first + "'");
}

void check_options(const CliConfig& cfg) {
  if (cfg.eps90_scale <= 0.0 || cfg.eps90_scale > 1.0)
    throw std::runtime_error("eps90 scale must be in (0, 1]");
  if (cfg.workers < 1) throw std::runtime_error("workers must be >= 1");
  if (cfg.mode != "ideal" && cfg.mode != "pulse")
    throw std::runtime_error("mode must be ideal or pulse");
  cfg.sys.validate();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  return out;
}

Spectrum spectrum_for(const CliConfig& cfg, double theta, double phi) {
  if (cfg.mode == "ideal") {
    CloneOutput out = clone_angles(theta, phi);
    return acquire(out.full, cfg.sys, Channel::H);
  }
  PulseCloneResult res = clone_pulse(cfg.sys, theta, phi, cfg.run, cfg.eps90_scale);
  // Scale the deviation so a clone's multiplet integral equals its reduced
  // Bloch transverse component, matching the ideal-mode and sweep units.
  DensityState dev(Matrix(4.0 * res.full), {"P", "A", "B"}, /*deviation=*/true);
  return acquire(dev, cfg.sys, Channel::H);
}

int cmd_clone(const CliConfig& cfg, double theta_deg, double phi_deg) {
  const double theta = theta_deg * kPi / 180.0;
  const double phi = phi_deg * kPi / 180.0;
  nlohmann::json report;
  report["theta_deg"] = theta_deg;
  report["phi_deg"] = phi_deg;
  report["mode"] = cfg.mode;

  BlochVector ba, bb;
  double fa, fb;
  if (cfg.mode == "ideal") {
    CloneOutput out = clone_angles(theta, phi);
    ba = bloch_vector(out.clone_a);
    bb = bloch_vector(out.clone_b);
    fa = out.fidelity_a;
    fb = out.fidelity_b;
  } else {
    PulseCloneResult res = clone_pulse(cfg.sys, theta, phi, cfg.run, cfg.eps90_scale);
    ba = res.bloch_a;
    bb = res.bloch_b;
    fa = res.fidelity_a;
    fb = res.fidelity_b;
  }
  const Spectrum spec = spectrum_for(cfg, theta, phi);
  const Complex ia = integrate_multiplet(spec, 1);
  const Complex ib = integrate_multiplet(spec, 2);

  std::printf("mode        %s\n", cfg.mode.c_str());
  std::printf("input       theta = %g deg, phi = %g deg\n", theta_deg, phi_deg);
  std::printf("fidelity    A = %.10f  B = %.10f\n", fa, fb);
  std::printf("bloch A     (%.6f, %.6f, %.6f)\n", ba.x, ba.y, ba.z);
  std::printf("bloch B     (%.6f, %.6f, %.6f)\n", bb.x, bb.y, bb.z);
  std::printf("integral A  %.6f %+.6fi\n", ia.real(), ia.imag());
  std::printf("integral B  %.6f %+.6fi\n", ib.real(), ib.imag());

  report["fidelity_a"] = fa;
  report["fidelity_b"] = fb;
  report["bloch_a"] = {ba.x, ba.y, ba.z};
  report["bloch_b"] = {bb.x, bb.y, bb.z};
  report["integral_a"] = {ia.real(), ia.imag()};
  report["integral_b"] = {ib.real(), ib.imag()};

  std::filesystem::create_directories(cfg.out_dir);
  open_out(cfg.out_dir + "/clone_report.json") << report.dump(2) << "\n";
  if (cfg.format == "json") {
    auto out = open_out(cfg.out_dir + "/spectrum.json");
    write_spectrum_json(spec, out);
  } else {
    auto out = open_out(cfg.out_dir + "/spectrum.csv");
    write_spectrum_csv(spec, out);
  }
  return 0;
}

int cmd_sweep(const CliConfig& cfg) {
  SweepOptions opts;
  opts.pulse_mode = cfg.mode == "pulse";
  opts.run = cfg.run;
  opts.eps90_scale = cfg.eps90_scale;
  opts.workers = cfg.workers;
  const auto records = run_sweep(cfg.sys, opts);
  std::filesystem::create_directories(cfg.out_dir);
  write_sweep_csv(records, cfg.out_dir + "/sweep.csv");
  write_sweep_json(records, cfg.out_dir + "/sweep.json", cfg.mode);
  write_surface_files(records, cfg.out_dir, "surface_" + cfg.mode);
  std::printf("wrote %zu records to %s (sweep.csv, sweep.json, surface_%s_*.dat)\n",
              records.size(), cfg.out_dir.c_str(), cfg.mode.c_str());
  return 0;
}

int cmd_validate(const CliConfig& cfg, const std::string& golden_dir) {
  ValidateConfig vcfg;
  vcfg.sys = cfg.sys;
  vcfg.golden_dir = golden_dir;
  vcfg.scratch_dir = cfg.out_dir + "/validate";
  vcfg.eps90_scale = cfg.eps90_scale;
  const auto results = run_acceptance(vcfg);
  bool all_ok = true;
  for (const auto& r : results) {
    const char* status = r.downgraded ? "OBSERVATION" : r.pass ? "PASS" : "FAIL";
    std::printf("[%-11s] %-3s %s — %s\n", status, r.id.c_str(), r.name.c_str(),
                r.detail.c_str());
    if (!r.pass) all_ok = false;
  }
  std::printf("%s\n", all_ok ? "all checks passed" : "FAILURES present");
  return all_ok ? 0 : 1;
}

int cmd_spectrum(const CliConfig& cfg, double theta_deg, double phi_deg) {
  const Spectrum spec =
      spectrum_for(cfg, theta_deg * kPi / 180.0, phi_deg * kPi / 180.0);
  std::filesystem::create_directories(cfg.out_dir);
  if (cfg.format == "json") {
    auto out = open_out(cfg.out_dir + "/spectrum.json");
    write_spectrum_json(spec, out);
  } else {
    auto out = open_out(cfg.out_dir + "/spectrum.csv");
    write_spectrum_csv(spec, out);
  }
  for (int spin : {1, 2}) {
    const Complex v = integrate_multiplet(spec, spin);
    std::printf("integral %s  %.6f %+.6fi\n", spin == 1 ? "A" : "B", v.real(),
                v.imag());
  }
  std::printf("wrote spectrum to %s\n", cfg.out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1 -> 2 approximate cloning simulator for a three-spin system"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string config_path, golden_dir = "data/golden";
  double theta_deg = 90.0, phi_deg = 0.0;
  bool relaxation = false, ideal_selective = false;

  std::string mode_flag;
  double eps_flag = 0.0, b1_flag = 0.0;
  int workers_flag = 0;
  app.add_option("--config", config_path, "spin-system / run-option config file");
  auto* mode_opt = app.add_option("--mode", mode_flag, "ideal|pulse")
                       ->check(CLI::IsMember({"ideal", "pulse"}));
  app.add_flag("--relaxation", relaxation, "enable T1/T2 relaxation (pulse mode)");
  app.add_flag("--ideal-selective", ideal_selective,
               "use exact selective pulses (pulse mode)");
  auto* eps_opt = app.add_option("--eps90-scale", eps_flag, "selective delay scale, (0,1]");
  auto* b1_opt = app.add_option("--b1-error", b1_flag, "fractional hard-pulse flip error");
  auto* workers_opt = app.add_option("--workers", workers_flag, "sweep worker threads");
  app.add_option("--out", cfg.out_dir, "output directory");
  app.add_option("--format", cfg.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  auto* clone_cmd = app.add_subcommand("clone", "clone one input state");
  clone_cmd->add_option("--theta", theta_deg, "polar angle, degrees");
  clone_cmd->add_option("--phi", phi_deg, "azimuth, degrees");

  auto* sweep_cmd = app.add_subcommand("sweep", "run the 13 x 24 Bloch-grid sweep");

  auto* validate_cmd = app.add_subcommand("validate", "run the acceptance checks");
  validate_cmd->add_option("--golden-dir", golden_dir, "surface golden directory");

  auto* spectrum_cmd = app.add_subcommand("spectrum", "export the clone spectrum");
  spectrum_cmd->add_option("--theta", theta_deg, "polar angle, degrees");
  spectrum_cmd->add_option("--phi", phi_deg, "azimuth, degrees");

  // Let the shared flags above be given after the verb as well.
  for (auto* cmd : {clone_cmd, sweep_cmd, validate_cmd, spectrum_cmd}) cmd->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    // Flags override config-file values.
    if (mode_opt->count()) cfg.mode = mode_flag;
    if (eps_opt->count()) cfg.eps90_scale = eps_flag;
    if (b1_opt->count()) cfg.run.b1_error = b1_flag;
    if (workers_opt->count()) cfg.workers = workers_flag;
    if (relaxation) cfg.run.relaxation = true;
    if (ideal_selective) cfg.run.ideal_selective = true;
    check_options(cfg);

    if (clone_cmd->parsed()) return cmd_clone(cfg, theta_deg, phi_deg);
    if (app.get_subcommand("sweep")->parsed()) return cmd_sweep(cfg);
    if (validate_cmd->parsed()) return cmd_validate(cfg, golden_dir);
    if (spectrum_cmd->parsed()) return cmd_spectrum(cfg, theta_deg, phi_deg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qclone/sweep.hpp"

using namespace qclone;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_dir(const char* name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace

TEST_CASE("ideal sweep covers the full grid in theta-major order") {
  SpinSystem sys;
  SweepOptions opts;
  const auto records = run_sweep(sys, opts);
  REQUIRE(records.size() == 312);
  CHECK(records[0].theta_deg == 0.0);
  CHECK(records[0].phi_deg == 0.0);
  CHECK(records[1].phi_deg == 15.0);
  CHECK(records[24].theta_deg == 15.0);
  CHECK(records.back().theta_deg == 180.0);
  CHECK(records.back().phi_deg == 345.0);
}

TEST_CASE("ideal sweep reproduces the closed-form surfaces") {
  SpinSystem sys;
  SweepOptions opts;
  const auto records = run_sweep(sys, opts);
  for (const auto& r : records) {
    const double theta = r.theta_deg * kPi / 180.0;
    const double phi = r.phi_deg * kPi / 180.0;
    const Complex expect = (2.0 / 3.0) * std::sin(theta) * std::exp(Complex(0, phi));
    CHECK(std::abs(r.integral_a - expect) < 1e-10);
    CHECK(std::abs(r.integral_b - expect) < 1e-10);
    CHECK(std::abs(r.fidelity_a - 5.0 / 6.0) < 1e-10);
  }
}

TEST_CASE("worker count does not change the records") {
  SpinSystem sys;
  SweepOptions one, four;
  four.workers = 4;
  const auto a = run_sweep(sys, one);
  const auto b = run_sweep(sys, four);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].integral_a == b[i].integral_a);
    CHECK(a[i].integral_b == b[i].integral_b);
    CHECK(a[i].fidelity_a == b[i].fidelity_a);
  }
}

TEST_CASE("pulse-mode sweep with exact selectives matches the ideal surfaces") {
  SpinSystem sys;
  SweepOptions opts;
  opts.pulse_mode = true;
  opts.run.ideal_selective = true;
  const auto records = run_sweep(sys, opts);
  for (const auto& r : records) {
    const double theta = r.theta_deg * kPi / 180.0;
    const double phi = r.phi_deg * kPi / 180.0;
    const Complex expect = (2.0 / 3.0) * std::sin(theta) * std::exp(Complex(0, phi));
    CHECK(std::abs(r.integral_a - expect) < 1e-6);
    CHECK(std::abs(r.integral_b - expect) < 1e-6);
  }
}

TEST_CASE("output files are byte-identical across repeated writes") {
  SpinSystem sys;
  SweepOptions opts;
  const auto records = run_sweep(sys, opts);
  const std::string d1 = temp_dir("qclone_sweep1"), d2 = temp_dir("qclone_sweep2");
  for (const auto& d : {d1, d2}) {
    write_sweep_csv(records, d + "/sweep.csv");
    write_sweep_json(records, d + "/sweep.json", "ideal");
    write_surface_files(records, d, "surface");
  }
  for (const char* f : {"/sweep.csv", "/sweep.json", "/surface_re_a.dat",
                        "/surface_im_a.dat", "/surface_re_b.dat", "/surface_im_b.dat"}) {
    CHECK(slurp(d1 + f) == slurp(d2 + f));
    CHECK(!slurp(d1 + f).empty());
  }
}

TEST_CASE("surface files have the grid shape") {
  SpinSystem sys;
  SweepOptions opts;
  const auto records = run_sweep(sys, opts);
  const std::string dir = temp_dir("qclone_surf");
  write_surface_files(records, dir, "surface");
  std::ifstream in(dir + "/surface_re_a.dat");
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream ss(line);
    double v;
    int cols = 0;
    while (ss >> v) ++cols;
    CHECK(cols == 24);
  }
  CHECK(rows == 13);
}

TEST_CASE("csv header and row count") {
  SpinSystem sys;
  SweepOptions opts;
  const auto records = run_sweep(sys, opts);
  const std::string dir = temp_dir("qclone_csv");
  write_sweep_csv(records, dir + "/sweep.csv");
  const std::string text = slurp(dir + "/sweep.csv");
  CHECK(text.rfind("theta_deg,phi_deg,re_a,im_a,re_b,im_b,fid_a,fid_b\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 313);  // header + 312
}

TEST_CASE("invalid worker counts are rejected") {
  SpinSystem sys;
  SweepOptions opts;
  opts.workers = 0;
  CHECK_THROWS(run_sweep(sys, opts));
}

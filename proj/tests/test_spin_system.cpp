#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qclone/spin_system.hpp"

using namespace qclone;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path =
      (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("default system carries the reference parameters") {
  SpinSystem sys = SpinSystem::table1();
  CHECK(sys.offset_hz[0] == 0.0);
  CHECK(sys.offset_hz[1] == 104.0);
  CHECK(sys.offset_hz[2] == -104.0);
  CHECK(sys.j_pa_hz == 9.1);
  CHECK(sys.j_pb_hz == 11.3);
  CHECK(sys.j_ab_hz == 14.3);
  CHECK(sys.t1_s[0] == 3.8);
  CHECK(sys.t1_s[1] == 17.6);
  CHECK(sys.t1_s[2] == 16.9);
  CHECK(sys.t2_s[0] == 0.72);
  CHECK(sys.t2_s[1] == 1.82);
  CHECK(sys.t2_s[2] == 1.82);
  CHECK(sys.delta_nu_hz() == 104.0);
}

TEST_CASE("derived ratios") {
  SpinSystem sys;
  CHECK(std::abs(sys.ratio() - 242.9458642 / 600.1517482) < 1e-15);
  // Published rounded value of the gradient-pair ratio.
  CHECK(std::abs(sys.gradient_ratio() - 0.6633) < 5e-5);
  CHECK(std::abs(sys.gradient_ratio() - 0.6633348736) < 1e-9);
  CHECK(sys.j_between(0, 1) == 9.1);
  CHECK(sys.j_between(2, 0) == 11.3);
  CHECK(sys.j_between(1, 2) == 14.3);
  CHECK_THROWS(sys.j_between(1, 1));
}

TEST_CASE("config round trip preserves every field") {
  SpinSystem sys;
  sys.offset_hz[1] = 250.0;
  sys.offset_hz[2] = -250.0;
  sys.t2_s[0] = 0.5;
  const std::string path = write_temp("qclone_roundtrip.cfg", "");
  save_spin_system(sys, path);
  SpinSystem back = load_spin_system(path);
  CHECK(back.offset_hz[1] == 250.0);
  CHECK(back.offset_hz[2] == -250.0);
  CHECK(back.t2_s[0] == 0.5);
  CHECK(back.j_ab_hz == sys.j_ab_hz);
  CHECK(back.freq_p_mhz == sys.freq_p_mhz);
}

TEST_CASE("loader diagnostics carry the line number") {
  const std::string path =
      write_temp("qclone_bad.cfg", "nu_A = 104\nnot a valid line\n");
  try {
    load_spin_system(path);
    FAIL("expected a parse error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}

TEST_CASE("unknown keys are rejected unless collected") {
  const std::string path =
      write_temp("qclone_extra.cfg", "nu_A = 104\neps90_scale = 0.9\n");
  CHECK_THROWS(load_spin_system(path));
  std::map<std::string, double> extra;
  SpinSystem sys = load_spin_system(path, &extra);
  CHECK(sys.offset_hz[1] == 104.0);
  CHECK(extra.size() == 1);
  CHECK(extra.at("eps90_scale") == 0.9);
}

TEST_CASE("validation rejects nonphysical parameters") {
  SpinSystem sys;
  sys.t2_s[1] = -1.0;
  CHECK_THROWS(sys.validate());
  sys = SpinSystem{};
  sys.offset_hz[1] = -104.0;
  sys.offset_hz[2] = 104.0;  // swapped protons
  CHECK_THROWS(sys.validate());
  CHECK_NOTHROW(SpinSystem{}.validate());
}

TEST_CASE("comments and blank lines are ignored") {
  const std::string path = write_temp(
      "qclone_comments.cfg", "# header\n\nnu_A = 204  # trailing comment\n\n");
  SpinSystem sys = load_spin_system(path);
  CHECK(sys.offset_hz[1] == 204.0);
  CHECK(sys.j_ab_hz == 14.3);  // untouched default
}

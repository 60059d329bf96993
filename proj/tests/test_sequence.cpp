#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "qclone/sequence.hpp"

using namespace qclone;

TEST_CASE("derived delays follow the coupling constants") {
  SpinSystem sys;
  Sequence s = derived_delays(sys, 0.9);
  CHECK(std::abs(s.tau_ab - 1.0 / (4.0 * 14.3)) < 1e-15);
  CHECK(std::abs(s.tau_ap - 1.0 / (8.0 * 9.1)) < 1e-15);
  CHECK(std::abs(s.tau_bp - 1.0 / (8.0 * 11.3)) < 1e-15);
  CHECK(std::abs(s.eps90 - 0.9 / (4.0 * 104.0)) < 1e-15);
}

TEST_CASE("builders produce the expected event mix") {
  SpinSystem sys;
  Sequence s90 = selective90(sys, 1, 0.0, 0.9);
  CHECK(s90.events.size() == 3);  // frame / composite / frame
  CHECK(std::holds_alternative<JumpReturn90>(s90.events[1]));

  Sequence s180 = selective180(sys, 2, kPi / 2, 0.9);
  CHECK(s180.events.size() == 3);
  CHECK(std::holds_alternative<JumpReturn90>(s180.events[0]));
  CHECK(std::holds_alternative<JumpReturn90>(s180.events[1]));

  Sequence echo = echo_sequence(sys);
  int delays = 0, pulses = 0;
  for (const auto& e : echo.events) {
    if (std::holds_alternative<Delay>(e)) ++delays;
    if (std::holds_alternative<HardPulse>(e)) ++pulses;
  }
  CHECK(delays == 8);  // four per coupling block
  CHECK(pulses == 4);  // the P-channel inversions

  Sequence purif = purification_sequence(sys);
  bool has_zfilter = false, has_crush = false;
  int grads = 0;
  for (const auto& e : purif.events) {
    if (std::holds_alternative<ZFilter>(e)) has_zfilter = true;
    if (std::holds_alternative<Crush>(e)) has_crush = true;
    if (std::holds_alternative<Gradient>(e)) ++grads;
  }
  CHECK(has_zfilter);
  CHECK(has_crush);
  CHECK(grads == 2);
  // The second gradient area is the negative ratioed strength.
  for (const auto& e : purif.events)
    if (const auto* g = std::get_if<Gradient>(&e))
      if (g->area < 0) CHECK(std::abs(g->area + sys.gradient_ratio()) < 1e-12);
}

TEST_CASE("text format round trips every event type") {
  SpinSystem sys;
  Sequence seq = purification_sequence(sys);
  seq.append(cloning_sequence(sys));
  const std::string text = format_sequence(seq);
  Sequence back = parse_sequence(text, seq.name);
  REQUIRE(back.events.size() == seq.events.size());
  for (size_t i = 0; i < seq.events.size(); ++i) {
    CHECK(seq.events[i].index() == back.events[i].index());
  }
  // Numeric fidelity of a representative through the degree conversion.
  for (size_t i = 0; i < seq.events.size(); ++i) {
    if (const auto* p = std::get_if<HardPulse>(&seq.events[i])) {
      const auto* q = std::get_if<HardPulse>(&back.events[i]);
      REQUIRE(q != nullptr);
      CHECK(std::abs(p->flip - q->flip) < 1e-9);
      CHECK(std::abs(p->phase - q->phase) < 1e-9);
      CHECK(p->channel == q->channel);
    }
  }
}

TEST_CASE("file save and load") {
  SpinSystem sys;
  const std::string path =
      (std::filesystem::temp_directory_path() / "qclone_seq.txt").string();
  Sequence seq = cloning_sequence(sys);
  save_sequence(seq, path);
  Sequence back = load_sequence(path);
  CHECK(back.events.size() == seq.events.size());
}

TEST_CASE("parser rejects malformed programs") {
  CHECK_THROWS(parse_sequence("pulse X 90 0\n"));       // bad channel
  CHECK_THROWS(parse_sequence("pulse H 90\n"));         // missing phase
  CHECK_THROWS(parse_sequence("delay -0.5\n"));         // negative delay
  CHECK_THROWS(parse_sequence("jr P 0.002 0\n"));       // jr cannot target P
  CHECK_THROWS(parse_sequence("zfilter\n"));            // needs delays
  CHECK_THROWS(parse_sequence("wibble 1 2 3\n"));       // unknown event
  CHECK_NOTHROW(parse_sequence("# comment line\n\npulse H 45 90\n"));
}

TEST_CASE("parser conventions: degrees and seconds") {
  Sequence s = parse_sequence("pulse H 90 90\njr A 0.002164 45\nzrot B -90\n");
  const auto& p = std::get<HardPulse>(s.events[0]);
  CHECK(std::abs(p.flip - kPi / 2) < 1e-12);
  CHECK(std::abs(p.phase - kPi / 2) < 1e-12);
  const auto& jr = std::get<JumpReturn90>(s.events[1]);
  CHECK(jr.target == 1);
  CHECK(std::abs(jr.eps90 - 0.002164) < 1e-12);
  CHECK(std::abs(jr.phase - kPi / 4) < 1e-12);
  const auto& z = std::get<ZRotation>(s.events[2]);
  CHECK(z.spin == 2);
  CHECK(std::abs(z.angle + kPi / 2) < 1e-12);
}

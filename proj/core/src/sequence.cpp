#include "qclone/sequence.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qclone {

void Sequence::append(const Sequence& other) {
  events.insert(events.end(), other.events.begin(), other.events.end());
}

Sequence derived_delays(const SpinSystem& sys, double eps90_scale) {
  Sequence s;
  s.tau_ab = 1.0 / (4.0 * sys.j_ab_hz);
  s.tau_ap = 1.0 / (8.0 * sys.j_pa_hz);
  s.tau_bp = 1.0 / (8.0 * sys.j_pb_hz);
  s.eps90 = eps90_scale / (4.0 * sys.delta_nu_hz());
  return s;
}

Sequence selective90(const SpinSystem& sys, int target, double axis, double eps90_scale) {
  Sequence s = derived_delays(sys, eps90_scale);
  s.name = "selective90";
  // Net effect (couplings aside): a clean 90 about `axis` on the target.
  // The jump-and-return composite carries an inner z-rotation on the target
  // and a z-rotation on the spectator; both are compensated here.
  if (target == 1) {
    s.push(ZRotation{1, -kPi / 2});
    s.push(JumpReturn90{1, s.eps90, axis - kPi / 2});
    s.push(ZRotation{2, kPi / 2});
  } else {
    s.push(ZRotation{2, kPi / 2});
    s.push(JumpReturn90{2, s.eps90, axis + kPi / 2});
    s.push(ZRotation{1, -kPi / 2});
  }
  return s;
}

Sequence selective180(const SpinSystem& sys, int target, double axis, double eps90_scale) {
  Sequence s = derived_delays(sys, eps90_scale);
  s.name = "selective180";
  if (target == 1) {
    s.push(JumpReturn90{1, s.eps90, axis - kPi / 2});
    s.push(JumpReturn90{1, s.eps90, axis});
    s.push(ZRotation{2, kPi});
  } else {
    s.push(JumpReturn90{2, s.eps90, axis + kPi / 2});
    s.push(JumpReturn90{2, s.eps90, axis});
    s.push(ZRotation{1, -kPi});
  }
  return s;
}

Sequence echo_sequence(const SpinSystem& sys, double eps90_scale) {
  Sequence s = derived_delays(sys, eps90_scale);
  s.name = "echo";
  // Two blocks of four delays.  The 180s toggle the coupling signs so that
  // J_PA accumulates 1/(2 J_PA) over the first block, J_PB 1/(2 J_PB) over
  // the second, while offsets and J_AB refocus.  180 phases alternate
  // x / -x (hard) and y / -y (selective) so pulse rotations cancel in pairs.
  auto block = [&](double tau, int flip_with_p, int flip_alone) {
    for (int i = 0; i < 4; ++i) {
      s.push(Delay{tau});
      if (i % 2 == 0) {
        s.push(HardPulse{Channel::P, kPi, i == 0 ? 0.0 : kPi});
        s.append(selective180(sys, flip_with_p, i == 0 ? kPi / 2 : -kPi / 2, eps90_scale));
      } else {
        s.append(selective180(sys, flip_alone, i == 1 ? kPi / 2 : -kPi / 2, eps90_scale));
      }
    }
  };
  block(s.tau_ap, /*flip_with_p=*/1, /*flip_alone=*/2);
  block(s.tau_bp, /*flip_with_p=*/2, /*flip_alone=*/1);
  return s;
}

namespace {

// CZ(A,B) via the homonuclear echo: 2 tau_AB of J_AB evolution with offsets
// and the P couplings refocused, plus the frame rotations completing the
// controlled-pi decomposition.
Sequence cz_ab(const SpinSystem& sys, double eps90_scale) {
  Sequence s = derived_delays(sys, eps90_scale);
  s.push(Delay{s.tau_ab});
  s.push(HardPulse{Channel::H, kPi, 0.0});
  s.push(Delay{s.tau_ab});
  s.push(HardPulse{Channel::H, kPi, kPi});
  if (sys.offset_hz[0] != 0.0)  // P is untouched by the H-channel echo
    s.push(ZRotation{0, -4.0 * kPi * sys.offset_hz[0] * s.tau_ab});
  s.push(ZRotation{1, -kPi / 2});
  s.push(ZRotation{2, -kPi / 2});
  return s;
}

// CZ(P,A) CZ(P,B) = echo core + frame rotations.
Sequence cz_pa_pb(const SpinSystem& sys, double eps90_scale) {
  Sequence s = echo_sequence(sys, eps90_scale);
  s.push(ZRotation{0, -kPi});
  s.push(ZRotation{1, -kPi / 2});
  s.push(ZRotation{2, -kPi / 2});
  return s;
}

// Hadamard as rotation: H = Ry(pi/2) Rz(pi).
Sequence h_p() {
  Sequence s;
  s.push(ZRotation{0, kPi});
  s.push(HardPulse{Channel::P, kPi / 2, kPi / 2});
  return s;
}

Sequence h_ab() {
  Sequence s;
  s.push(ZRotation{1, kPi});
  s.push(ZRotation{2, kPi});
  s.push(HardPulse{Channel::H, kPi / 2, kPi / 2});
  return s;
}

// CNOT(P->A) CNOT(P->B) as (H_A H_B) CZ_PA CZ_PB (H_A H_B).
Sequence cnot_p_to_ab(const SpinSystem& sys, double eps90_scale) {
  Sequence s = h_ab();
  s.append(cz_pa_pb(sys, eps90_scale));
  s.append(h_ab());
  return s;
}

}  // namespace

Sequence cloning_sequence(const SpinSystem& sys, double eps90_scale) {
  const double theta1 = std::asin(1.0 / std::sqrt(3.0));
  const double theta2 = kPi / 12.0;
  Sequence s = derived_delays(sys, eps90_scale);
  s.name = "cloning";
  // Preparation: both ancillas rotated together by theta1, controlled-pi,
  // then by theta2.
  s.push(HardPulse{Channel::H, theta1, kPi / 2});
  s.append(cz_ab(sys, eps90_scale));
  s.push(HardPulse{Channel::H, theta2, kPi / 2});
  // Copy: CNOT(P->A) CNOT(P->B), then CNOT(A->P) CNOT(B->P).
  s.append(cnot_p_to_ab(sys, eps90_scale));
  s.append(h_p());
  s.append(cz_pa_pb(sys, eps90_scale));
  s.append(h_p());
  return s;
}

Sequence purification_sequence(const SpinSystem& sys, double eps90_scale,
                               int n_zfilter_delays) {
  if (n_zfilter_delays < 1)
    throw std::invalid_argument("purification_sequence: need at least one z-filter delay");
  Sequence s = derived_delays(sys, eps90_scale);
  s.name = "purification";
  // Pre-crush: reduce signals not starting from P_z.
  s.push(HardPulse{Channel::H, kPi / 2, 0.0});
  s.push(Crush{});
  // Cat: Hadamard on P, then the CNOT pair.
  s.append(h_p());
  s.append(cnot_p_to_ab(sys, eps90_scale));
  // Gradient filter, strengths 1 : (2-r)/(2+r) with the P coherence sense
  // flipped in between; selects the three-quantum pathway.
  s.push(Gradient{1.0});
  s.push(HardPulse{Channel::P, kPi, 0.0});
  s.push(Gradient{-sys.gradient_ratio()});
  // Anticat: the CNOT pair, then Hadamard on P.
  s.append(cnot_p_to_ab(sys, eps90_scale));
  s.append(h_p());
  // z-filter over one beat of the zero-quantum frequency |nu_A - nu_B|.
  const double beat = 1.0 / std::abs(sys.offset_hz[1] - sys.offset_hz[2]);
  ZFilter zf;
  for (int k = 0; k < n_zfilter_delays; ++k)
    zf.delays.push_back(beat * k / n_zfilter_delays);
  s.push(std::move(zf));
  return s;
}

// --- text format ----------------------------------------------------------

namespace {

constexpr double kDeg = kPi / 180.0;

std::string spin_name(int spin) { return spin == 0 ? "P" : spin == 1 ? "A" : "B"; }

int parse_spin(const std::string& t, const std::string& ctx) {
  if (t == "P") return 0;
  if (t == "A") return 1;
  if (t == "B") return 2;
  throw std::runtime_error(ctx + ": bad spin '" + t + "'");
}

}  // namespace

std::string format_sequence(const Sequence& seq) {
  std::ostringstream out;
  out.precision(12);
  if (!seq.name.empty()) out << "# " << seq.name << "\n";
  for (const auto& e : seq.events) {
    std::visit(
        [&](const auto& ev) {
          using T = std::decay_t<decltype(ev)>;
          if constexpr (std::is_same_v<T, HardPulse>) {
            out << "pulse " << (ev.channel == Channel::H ? "H" : "P") << " "
                << ev.flip / kDeg << " " << ev.phase / kDeg;
          } else if constexpr (std::is_same_v<T, Delay>) {
            out << "delay " << ev.duration;
          } else if constexpr (std::is_same_v<T, JumpReturn90>) {
            out << "jr " << (ev.target == 1 ? "A" : "B") << " " << ev.eps90 << " "
                << ev.phase / kDeg;
          } else if constexpr (std::is_same_v<T, Gradient>) {
            out << "grad " << ev.area;
          } else if constexpr (std::is_same_v<T, ZFilter>) {
            out << "zfilter";
            for (double d : ev.delays) out << " " << d;
          } else if constexpr (std::is_same_v<T, Crush>) {
            out << "crush";
          } else if constexpr (std::is_same_v<T, ZRotation>) {
            out << "zrot " << spin_name(ev.spin) << " " << ev.angle / kDeg;
          }
        },
        e);
    out << "\n";
  }
  return out.str();
}

Sequence parse_sequence(const std::string& text, const std::string& name) {
  Sequence seq;
  seq.name = name;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string kind;
    if (!(ss >> kind)) continue;
    const std::string ctx = "line " + std::to_string(lineno);
    auto need = [&](double& v, const char* what) {
      if (!(ss >> v)) throw std::runtime_error(ctx + ": missing " + what);
    };
    if (kind == "pulse") {
      std::string ch;
      if (!(ss >> ch) || (ch != "H" && ch != "P"))
        throw std::runtime_error(ctx + ": bad channel");
      double flip, phase;
      need(flip, "flip angle");
      need(phase, "phase");
      seq.push(HardPulse{ch == "H" ? Channel::H : Channel::P, flip * kDeg, phase * kDeg});
    } else if (kind == "delay") {
      double d;
      need(d, "duration");
      if (d < 0) throw std::runtime_error(ctx + ": negative delay");
      seq.push(Delay{d});
    } else if (kind == "jr") {
      std::string t;
      if (!(ss >> t)) throw std::runtime_error(ctx + ": missing jr target");
      const int spin = parse_spin(t, ctx);
      if (spin == 0) throw std::runtime_error(ctx + ": jr target must be A or B");
      double eps, phase;
      need(eps, "eps90");
      need(phase, "phase");
      seq.push(JumpReturn90{spin, eps, phase * kDeg});
    } else if (kind == "grad") {
      double a;
      need(a, "area");
      seq.push(Gradient{a});
    } else if (kind == "crush") {
      seq.push(Crush{});
    } else if (kind == "zrot") {
      std::string t;
      if (!(ss >> t)) throw std::runtime_error(ctx + ": missing zrot spin");
      double ang;
      need(ang, "angle");
      seq.push(ZRotation{parse_spin(t, ctx), ang * kDeg});
    } else if (kind == "zfilter") {
      ZFilter zf;
      double d;
      while (ss >> d) zf.delays.push_back(d);
      if (zf.delays.empty()) throw std::runtime_error(ctx + ": zfilter needs delays");
      seq.push(std::move(zf));
    } else {
      throw std::runtime_error(ctx + ": unknown event '" + kind + "'");
    }
  }
  return seq;
}

Sequence load_sequence(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sequence file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string name = path;
  const auto slash = name.find_last_of('/');
  if (slash != std::string::npos) name.erase(0, slash + 1);
  return parse_sequence(ss.str(), name);
}

void save_sequence(const Sequence& seq, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write sequence file: " + path);
  out << format_sequence(seq);
}

}  // namespace qclone

#include "qclone/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qclone {

Spectrum acquire(const DensityState& s, const SpinSystem& sys, Channel channel) {
  if (s.dim() != 8)
    throw std::invalid_argument("acquire: expected a three-qubit state");
  const Matrix h = hamiltonian(sys, /*full_coupling=*/false);
  // Deviation matrices carry product-term coefficients; normalized states
  // carry Bloch components.  Both conventions sum a spin's four lines to
  // x + i y in their own normalization.
  const double scale = s.is_deviation() ? 0.5 : 2.0;
  Spectrum spec;
  spec.channel = channel;
  const std::vector<int> spins =
      channel == Channel::H ? std::vector<int>{1, 2} : std::vector<int>{0};
  for (int spin : spins) {
    const int bit = 1 << (2 - spin);
    for (int base = 0; base < 8; ++base) {
      if (base & bit) continue;  // enumerate states with the spin's bit clear
      const int up = base | bit;
      const Complex a = scale * s.rho()(up, base);
      if (std::abs(a) < 1e-14) continue;
      SpectralLine line;
      line.spin = spin;
      line.frequency_hz = (h(base, base).real() - h(up, up).real()) / (2.0 * kPi);
      line.amplitude = a;
      line.linewidth_hz = 1.0 / (kPi * sys.t2_s[spin]);
      spec.lines.push_back(line);
    }
  }
  return spec;
}

Complex integrate_multiplet(const Spectrum& spec, int spin) {
  const bool on_channel =
      spec.channel == Channel::H ? (spin == 1 || spin == 2) : spin == 0;
  if (!on_channel)
    throw std::invalid_argument("integrate_multiplet: spin not on this channel");
  Complex sum = 0.0;
  for (const auto& l : spec.lines)
    if (l.spin == spin) sum += l.amplitude;
  return sum;
}

double multiplet_asymmetry(const Spectrum& spec, int spin) {
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (const auto& l : spec.lines) {
    if (l.spin != spin) continue;
    const double m = std::abs(l.amplitude);
    if (!any) { lo = hi = m; any = true; }
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  if (!any || hi == 0.0) return 0.0;
  return (hi - lo) / hi;
}

Spectrum detect(const Spectrum& spec, const ReceiverError& err, double receiver_phase) {
  Spectrum out = spec;
  const Complex rot = std::exp(Complex(0.0, receiver_phase));
  const Complex perr = std::exp(Complex(0.0, err.phase_error));
  for (auto& l : out.lines) {
    const Complex raw = l.amplitude * rot;
    l.amplitude = (err.dc_offset + raw * perr +
                   err.quadrature_imbalance * std::conj(raw)) / rot;
  }
  return out;
}

Spectrum cyclops_average(const std::array<Spectrum, 4>& runs) {
  const Spectrum& first = runs[0];
  for (int k = 1; k < 4; ++k) {
    if (runs[k].channel != first.channel ||
        runs[k].lines.size() != first.lines.size())
      throw std::invalid_argument("cyclops_average: mismatched runs");
    for (size_t i = 0; i < first.lines.size(); ++i) {
      if (runs[k].lines[i].spin != first.lines[i].spin ||
          std::abs(runs[k].lines[i].frequency_hz - first.lines[i].frequency_hz) > 1e-9)
        throw std::invalid_argument("cyclops_average: line positions differ");
    }
  }
  Spectrum out = first;
  for (size_t i = 0; i < out.lines.size(); ++i) {
    Complex sum = 0.0;
    for (int k = 0; k < 4; ++k) sum += runs[k].lines[i].amplitude;
    out.lines[i].amplitude = sum / 4.0;
  }
  return out;
}

RenderedSpectrum render(const Spectrum& spec, double f_min_hz, double f_max_hz,
                        int n_points) {
  if (n_points < 2 || f_max_hz <= f_min_hz)
    throw std::invalid_argument("render: bad frequency grid");
  RenderedSpectrum out;
  out.frequency_hz.resize(n_points);
  out.value.assign(n_points, Complex(0.0));
  for (int k = 0; k < n_points; ++k) {
    const double f = f_min_hz + (f_max_hz - f_min_hz) * k / (n_points - 1);
    out.frequency_hz[k] = f;
    for (const auto& l : spec.lines) {
      // Complex Lorentzian with unit peak: absorption in the real part for
      // a real amplitude, dispersion in the imaginary part.
      out.value[k] += l.amplitude * l.linewidth_hz /
                      Complex(l.linewidth_hz, f - l.frequency_hz);
    }
  }
  return out;
}

std::vector<Complex> synthesize_fid(const Spectrum& spec, double dwell_s, int n_points) {
  if (dwell_s <= 0.0 || n_points < 1)
    throw std::invalid_argument("synthesize_fid: bad sampling");
  std::vector<Complex> fid(n_points, Complex(0.0));
  for (int k = 0; k < n_points; ++k) {
    const double t = k * dwell_s;
    for (const auto& l : spec.lines) {
      fid[k] += l.amplitude *
                std::exp(Complex(-kPi * l.linewidth_hz * t,
                                 2.0 * kPi * l.frequency_hz * t));
    }
  }
  return fid;
}

void write_spectrum_csv(const Spectrum& spec, std::ostream& out) {
  out << "spin,frequency_hz,real,imag,linewidth_hz\n";
  std::vector<SpectralLine> sorted = spec.lines;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.frequency_hz < b.frequency_hz;
  });
  char buf[160];
  for (const auto& l : sorted) {
    std::snprintf(buf, sizeof buf, "%s,%.12g,%.12g,%.12g,%.12g\n",
                  l.spin == 0 ? "P" : l.spin == 1 ? "A" : "B", l.frequency_hz,
                  l.amplitude.real(), l.amplitude.imag(), l.linewidth_hz);
    out << buf;
  }
}

void write_spectrum_json(const Spectrum& spec, std::ostream& out) {
  nlohmann::json j;
  j["channel"] = spec.channel == Channel::H ? "H" : "P";
  j["lines"] = nlohmann::json::array();
  std::vector<SpectralLine> sorted = spec.lines;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.frequency_hz < b.frequency_hz;
  });
  for (const auto& l : sorted) {
    j["lines"].push_back({{"spin", l.spin == 0 ? "P" : l.spin == 1 ? "A" : "B"},
                          {"frequency_hz", l.frequency_hz},
                          {"real", l.amplitude.real()},
                          {"imag", l.amplitude.imag()},
                          {"linewidth_hz", l.linewidth_hz}});
  }
  out << j.dump(2) << "\n";
}

}  // namespace qclone

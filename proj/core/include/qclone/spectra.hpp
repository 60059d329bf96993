#pragma once

// Observable extraction: transition-resolved spectrum synthesis, multiplet
// integration (software trace-out), phase-cycled averaging with an optional
// injected receiver-error model, and plot-oriented rendering / FID export.

#include <array>
#include <iosfwd>

#include "qclone/nmrsim.hpp"

namespace qclone {

struct SpectralLine {
  int spin = 0;               // 0 = P, 1 = A, 2 = B
  double frequency_hz = 0.0;  // transition frequency
  Complex amplitude;          // real = absorption (x), imag = dispersion (y)
  double linewidth_hz = 0.0;  // half width at half max, 1/(pi T2)
};

struct Spectrum {
  Channel channel = Channel::H;
  std::vector<SpectralLine> lines;
};

// Transition amplitudes of a state between eigenstates of the secular
// Hamiltonian.  The amplitude convention makes x-magnetization positive
// real: for a normalized density matrix, a spin's summed amplitudes equal
// bloch_x + i bloch_y of its reduced state; for a deviation matrix the sum
// equals the spin's x + i y product-term coefficient (so a bare unit
// x-term integrates to 1).
Spectrum acquire(const DensityState& s, const SpinSystem& sys, Channel channel);

// Complex sum of the spin's lines.  Throws if the spin is not on the
// spectrum's channel.
Complex integrate_multiplet(const Spectrum& spec, int spin);

// Largest relative spread of line magnitudes within a spin's multiplet:
// (max - min) / max, 0 for an empty or uniform multiplet.
double multiplet_asymmetry(const Spectrum& spec, int spin);

// Injected receiver imperfections.  The detected amplitude at receiver
// phase theta is
//   e^{-i theta} [ dc + a e^{i theta} e^{i phase_error}
//                     + quadrature_imbalance conj(a e^{i theta}) ]
// so a four-step phase cycle cancels dc exactly and averages the image term
// to zero.
struct ReceiverError {
  Complex dc_offset{0.0, 0.0};
  double quadrature_imbalance = 0.0;
  double phase_error = 0.0;
};

Spectrum detect(const Spectrum& spec, const ReceiverError& err, double receiver_phase);

// Average of four runs whose receiver phases were stepped by 90 degrees
// (each run already back-rotated by detect).  Throws when the runs disagree
// in channel or line positions.
Spectrum cyclops_average(const std::array<Spectrum, 4>& runs);

// Lorentzian rendering over a uniform frequency grid for plotting.
struct RenderedSpectrum {
  std::vector<double> frequency_hz;
  std::vector<Complex> value;
};

RenderedSpectrum render(const Spectrum& spec, double f_min_hz, double f_max_hz,
                        int n_points);

// Time-domain counterpart: sum of decaying complex exponentials sampled at
// dwell_s intervals; its discrete transform reproduces the rendered shape.
std::vector<Complex> synthesize_fid(const Spectrum& spec, double dwell_s, int n_points);

// CSV (frequency, real, imag) and JSON export of line lists.
void write_spectrum_csv(const Spectrum& spec, std::ostream& out);
void write_spectrum_json(const Spectrum& spec, std::ostream& out);

}  // namespace qclone

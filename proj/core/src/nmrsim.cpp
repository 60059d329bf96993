#include "qclone/nmrsim.hpp"

#include <cmath>
#include <stdexcept>

namespace qclone {

namespace {

Matrix spin_op(int spin, const Matrix& m) {
  Matrix out = Matrix::Identity(1, 1);
  for (int k = 0; k < 3; ++k)
    out = tensor(out, k == spin ? m : Matrix(Matrix::Identity(2, 2)));
  return out;
}

Matrix ix() { return 0.5 * pauli_x(); }
Matrix iy() { return 0.5 * pauli_y(); }
Matrix iz() { return 0.5 * pauli_z(); }

// exp(-i H t) for Hermitian H via its eigendecomposition.
Matrix expm_i(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector phases(h.rows());
  for (int k = 0; k < h.rows(); ++k)
    phases(k) = std::exp(Complex(0.0, -es.eigenvalues()(k) * t));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Matrix hamiltonian(const SpinSystem& sys, bool full_coupling) {
  Matrix h = Matrix::Zero(8, 8);
  for (int k = 0; k < 3; ++k)
    h += 2.0 * kPi * sys.offset_hz[k] * spin_op(k, iz());
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& p : pairs) {
    const double j = sys.j_between(p[0], p[1]);
    if (full_coupling && p[0] == 1 && p[1] == 2) {
      h += 2.0 * kPi * j *
           (spin_op(1, ix()) * spin_op(2, ix()) + spin_op(1, iy()) * spin_op(2, iy()) +
            spin_op(1, iz()) * spin_op(2, iz()));
    } else {
      h += 2.0 * kPi * j * spin_op(p[0], iz()) * spin_op(p[1], iz());
    }
  }
  return h;
}

Matrix free_evolution_unitary(const SpinSystem& sys, double t, bool full_coupling) {
  return expm_i(hamiltonian(sys, full_coupling), t);
}

Matrix hard_pulse_unitary(Channel channel, double flip, double phase) {
  Matrix g = Matrix::Zero(8, 8);
  const Matrix axis = std::cos(phase) * ix() + std::sin(phase) * iy();
  if (channel == Channel::H) {
    g += spin_op(1, axis) + spin_op(2, axis);
  } else {
    g += spin_op(0, axis);
  }
  return expm_i(g, flip);
}

Matrix z_rotation_unitary(int spin, double angle) {
  return spin_op(spin, rz(angle));
}

Matrix jump_return_ideal_unitary(int target, double phase) {
  if (target == 1) {
    return z_rotation_unitary(1, phase) * spin_op(1, ry(kPi / 2)) *
           z_rotation_unitary(1, kPi / 2 - phase) * z_rotation_unitary(2, -kPi / 2);
  }
  if (target == 2) {
    return z_rotation_unitary(2, phase) * spin_op(2, ry(-kPi / 2)) *
           z_rotation_unitary(2, -kPi / 2 - phase) * z_rotation_unitary(1, kPi / 2);
  }
  throw std::invalid_argument("jump_return_ideal_unitary: target must be 1 (A) or 2 (B)");
}

std::array<double, 8> coherence_weights(const SpinSystem& sys) {
  std::array<double, 8> w{};
  const double r = sys.ratio();
  for (int i = 0; i < 8; ++i) {
    w[i] = r * (0.5 - ((i >> 2) & 1)) + (0.5 - ((i >> 1) & 1)) + (0.5 - (i & 1));
  }
  return w;
}

namespace {

// Per-basis-state product-term type for the relaxation transform: a matrix
// element (i, j) belongs to a product of per-spin 2x2 elements; the decay of
// each Pauli coefficient factorises the same way, so work coefficient-wise.
struct PauliCache {
  // 64 product operators P_t (t = base-4 digits per spin: 0=I,1=X,2=Y,3=Z).
  std::array<Matrix, 64> ops;
  PauliCache() {
    const Matrix singles[4] = {Matrix::Identity(2, 2), pauli_x(), pauli_y(), pauli_z()};
    for (int t = 0; t < 64; ++t) {
      Matrix m = Matrix::Identity(1, 1);
      for (int k = 0; k < 3; ++k) m = tensor(m, singles[(t >> (2 * (2 - k))) & 3]);
      ops[t] = m;
    }
  }
};

const PauliCache& pauli_cache() {
  static PauliCache c;
  return c;
}

}  // namespace

Matrix relax_decay(const Matrix& rho, const SpinSystem& sys, double dt) {
  const auto& cache = pauli_cache();
  double e1[3], e2[3];
  for (int k = 0; k < 3; ++k) {
    e1[k] = std::exp(-dt / sys.t1_s[k]);
    e2[k] = std::exp(-dt / sys.t2_s[k]);
  }
  Matrix out = Matrix::Zero(8, 8);
  for (int t = 0; t < 64; ++t) {
    const Complex c = (cache.ops[t].adjoint() * rho).trace() / 8.0;
    if (std::abs(c) == 0.0) continue;
    double f = 1.0;
    for (int k = 0; k < 3; ++k) {
      const int a = (t >> (2 * (2 - k))) & 3;
      if (a == 1 || a == 2) f *= e2[k];
      else if (a == 3) f *= e1[k];
    }
    out += c * f * cache.ops[t];
  }
  return out;
}

Matrix relax_recovery(const SpinSystem& sys, double dt) {
  Matrix out = Matrix::Zero(8, 8);
  const double w[3] = {sys.ratio(), 1.0, 1.0};
  for (int k = 0; k < 3; ++k)
    out += w[k] * (1.0 - std::exp(-dt / sys.t1_s[k])) * spin_op(k, iz());
  return out;
}

namespace {

// Gradient-labelled deviation state: each component carries the accumulated
// gradient phase per unit strength; keys in nano-units to make exact bins.
using Labeled = std::map<long long, Matrix>;

long long label_key(double v) { return std::llround(v * 1e9); }

struct Engine {
  const SpinSystem& sys;
  const RunOptions& opts;
  std::array<double, 8> w;

  Engine(const SpinSystem& s, const RunOptions& o) : sys(s), opts(o), w(coherence_weights(s)) {}

  void conj_all(Labeled& st, const Matrix& u) const {
    for (auto& [c, m] : st) m = u * m * u.adjoint();
  }

  void delay(Labeled& st, double t) const {
    if (t <= 0.0) return;
    if (!opts.relaxation) {
      conj_all(st, free_evolution_unitary(sys, t, opts.full_coupling));
      return;
    }
    const int n = std::max(1, static_cast<int>(std::ceil(t / opts.relax_step_s)));
    const double dt = t / n;
    const Matrix u = free_evolution_unitary(sys, dt, opts.full_coupling);
    const Matrix rec = relax_recovery(sys, dt);
    for (int s = 0; s < n; ++s) {
      for (auto& [c, m] : st) m = relax_decay(u * m * u.adjoint(), sys, dt);
      // Fresh longitudinal magnetisation carries no gradient phase.
      auto it = st.find(0);
      if (it == st.end()) st.emplace(0, rec);
      else it->second += rec;
    }
  }

  void crush(Labeled& st) const {
    for (auto& [c, m] : st)
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
          if (std::abs(w[i] - w[j]) > 1e-9) m(i, j) = 0.0;
  }

  void gradient(Labeled& st, double area) const {
    Labeled next;
    for (const auto& [key, m] : st) {
      const double c = key * 1e-9;
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
          if (m(i, j) == Complex(0.0)) continue;
          const long long k = label_key(c + area * (w[i] - w[j]));
          auto it = next.find(k);
          if (it == next.end()) it = next.emplace(k, Matrix::Zero(8, 8)).first;
          it->second(i, j) += m(i, j);
        }
    }
    st = std::move(next);
  }

  // Process events [it, end); returns the ensemble-averaged final matrix.
  Matrix run(Labeled st, std::vector<PulseEvent>::const_iterator it,
             std::vector<PulseEvent>::const_iterator end) const {
    for (; it != end; ++it) {
      if (const auto* p = std::get_if<HardPulse>(&*it)) {
        conj_all(st, hard_pulse_unitary(p->channel, p->flip * (1.0 + opts.b1_error),
                                        p->phase));
      } else if (const auto* d = std::get_if<Delay>(&*it)) {
        delay(st, d->duration);
      } else if (const auto* jr = std::get_if<JumpReturn90>(&*it)) {
        if (opts.ideal_selective) {
          conj_all(st, jump_return_ideal_unitary(jr->target, jr->phase));
        } else {
          const double p2 = jr->target == 1 ? jr->phase + kPi / 2 : jr->phase - kPi / 2;
          conj_all(st, hard_pulse_unitary(Channel::H, (kPi / 4) * (1.0 + opts.b1_error),
                                          jr->phase));
          delay(st, jr->eps90);
          conj_all(st, hard_pulse_unitary(Channel::H, (kPi / 4) * (1.0 + opts.b1_error), p2));
        }
      } else if (const auto* g = std::get_if<Gradient>(&*it)) {
        gradient(st, g->area);
      } else if (std::get_if<Crush>(&*it)) {
        crush(st);
      } else if (const auto* z = std::get_if<ZRotation>(&*it)) {
        conj_all(st, z_rotation_unitary(z->spin, z->angle));
      } else if (const auto* zf = std::get_if<ZFilter>(&*it)) {
        // Average over the delay set; each branch finishes the remaining
        // events independently (the branches differ only by the delay).
        Matrix acc = Matrix::Zero(8, 8);
        for (double tau : zf->delays) {
          Labeled branch = st;
          delay(branch, tau);
          crush(branch);
          acc += run(std::move(branch), std::next(it), end);
        }
        return acc / static_cast<double>(zf->delays.size());
      }
    }
    Matrix out = Matrix::Zero(8, 8);
    const double sigma = opts.gradient_spread;
    for (const auto& [key, m] : st) {
      const double c = key * 1e-9;
      out += std::exp(-0.5 * sigma * sigma * c * c) * m;
    }
    return out;
  }
};

}  // namespace

Matrix run_sequence(const Matrix& initial, const Sequence& seq, const SpinSystem& sys,
                    const RunOptions& opts) {
  if (initial.rows() != 8 || initial.cols() != 8)
    throw std::invalid_argument("run_sequence: state must be 8x8");
  Engine eng(sys, opts);
  Labeled st;
  st.emplace(0, initial);
  return eng.run(std::move(st), seq.events.begin(), seq.events.end());
}

Matrix sequence_unitary(const Sequence& seq, const SpinSystem& sys, const RunOptions& opts) {
  Matrix u = Matrix::Identity(8, 8);
  for (const auto& e : seq.events) {
    Matrix v;
    if (const auto* p = std::get_if<HardPulse>(&e)) {
      v = hard_pulse_unitary(p->channel, p->flip * (1.0 + opts.b1_error), p->phase);
    } else if (const auto* d = std::get_if<Delay>(&e)) {
      v = free_evolution_unitary(sys, d->duration, opts.full_coupling);
    } else if (const auto* jr = std::get_if<JumpReturn90>(&e)) {
      if (opts.ideal_selective) {
        v = jump_return_ideal_unitary(jr->target, jr->phase);
      } else {
        const double p2 = jr->target == 1 ? jr->phase + kPi / 2 : jr->phase - kPi / 2;
        v = hard_pulse_unitary(Channel::H, (kPi / 4) * (1.0 + opts.b1_error), p2) *
            free_evolution_unitary(sys, jr->eps90, opts.full_coupling) *
            hard_pulse_unitary(Channel::H, (kPi / 4) * (1.0 + opts.b1_error), jr->phase);
      }
    } else if (const auto* z = std::get_if<ZRotation>(&e)) {
      v = z_rotation_unitary(z->spin, z->angle);
    } else {
      throw std::invalid_argument("sequence_unitary: non-unitary event in program");
    }
    u = v * u;
  }
  return u;
}

PulseCloneResult clone_pulse(const SpinSystem& sys, double theta, double phi,
                             const RunOptions& opts, double eps90_scale) {
  const double nx = std::sin(theta) * std::cos(phi);
  const double ny = std::sin(theta) * std::sin(phi);
  const double nz = std::cos(theta);
  Matrix p_dev = 0.5 * (nx * pauli_x() + ny * pauli_y() + nz * pauli_z());
  Matrix ground = Matrix::Zero(4, 4);
  ground(0, 0) = 1.0;
  const Matrix initial = tensor(p_dev, ground);

  PulseCloneResult res;
  res.full = run_sequence(initial, cloning_sequence(sys, eps90_scale), sys, opts);

  DensityState dev(res.full, {"P", "A", "B"}, /*deviation=*/true);
  const auto bloch_of = [&](const std::string& q) {
    return bloch_vector(partial_trace(dev, {q}));
  };
  res.bloch_a = bloch_of("A");
  res.bloch_b = bloch_of("B");
  res.fidelity_a = 0.5 * (1.0 + nx * res.bloch_a.x + ny * res.bloch_a.y + nz * res.bloch_a.z);
  res.fidelity_b = 0.5 * (1.0 + nx * res.bloch_b.x + ny * res.bloch_b.y + nz * res.bloch_b.z);
  return res;
}

PurificationResult purify_thermal(const SpinSystem& sys, const RunOptions& opts,
                                  double eps90_scale, int n_zfilter_delays) {
  const Matrix thermal = sys.ratio() * spin_op(0, iz()) + spin_op(1, iz()) + spin_op(2, iz());
  const Sequence seq = purification_sequence(sys, eps90_scale, n_zfilter_delays);
  PurificationResult res;
  res.full = run_sequence(thermal, seq, sys, opts);

  Matrix ground = Matrix::Zero(4, 4);
  ground(0, 0) = 1.0;
  const Matrix target = tensor(Matrix(0.5 * pauli_z()), ground);
  const double norm = (target.adjoint() * target).trace().real();
  res.coefficient = (target.adjoint() * res.full).trace().real() / norm;
  res.residual = max_abs(Matrix(res.full - res.coefficient * target));
  return res;
}

}  // namespace qclone

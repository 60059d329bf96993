#pragma once

// Dense complex linear algebra for up to three qubits: density states,
// tensor products, gate embedding, partial trace, fidelity and Bloch
// extraction.  Qubit ordering convention, fixed project wide: qubit 0 (P)
// is the most significant bit of the basis index, then A, then B.

#include <string>
#include <vector>

#include "qclone/types.hpp"

namespace qclone {

struct BlochVector {
  double x = 0.0, y = 0.0, z = 0.0;
  double length() const;
};

// n-qubit density operator with named qubits.  A DensityState is either a
// normalized state (unit trace, PSD) or an NMR deviation matrix (traceless
// Hermitian); the `deviation` flag selects which invariant is checked.
class DensityState {
 public:
  DensityState(Matrix rho, std::vector<std::string> labels, bool deviation = false);

  static DensityState pure(const Vector& psi, std::vector<std::string> labels);
  // |00..0><00..0| on the given qubits.
  static DensityState ground(std::vector<std::string> labels);

  int n_qubits() const { return static_cast<int>(labels_.size()); }
  int dim() const { return static_cast<int>(rho_.rows()); }
  const Matrix& rho() const { return rho_; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool is_deviation() const { return deviation_; }

  int index_of(const std::string& label) const;  // throws on unknown label

  void check_physical(double tol = kTolPhysical) const;  // throws on violation

 private:
  Matrix rho_;
  std::vector<std::string> labels_;
  bool deviation_;
};

// Kronecker product; dim(result) = dim(a) * dim(b).
Matrix tensor(const Matrix& a, const Matrix& b);

// Embeds `u` (dim 2^k) on the listed target qubits, identity elsewhere, and
// conjugates the state.  Rejects non-unitary u and bad target labels.
DensityState apply_unitary(const DensityState& s, const Matrix& u,
                           const std::vector<std::string>& targets);

// Same embedding, returned as a full-dimension unitary.
Matrix embed_unitary(const Matrix& u, const std::vector<int>& targets, int n_qubits);

DensityState partial_trace(const DensityState& s, const std::vector<std::string>& keep);

// <psi| rho |psi> for a single-qubit state.
double fidelity(const DensityState& s, const Vector& psi);

BlochVector bloch_vector(const DensityState& s);

// Pure state with Bloch vector (sin t cos p, sin t sin p, cos t).
DensityState state_from_angles(double theta, double phi,
                               const std::string& label = "P");
Vector ket_from_angles(double theta, double phi);

// Gate constructors.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix hadamard();
Matrix ry(double theta);  // exp(-i theta sigma_y / 2)
Matrix rz(double theta);  // exp(-i theta sigma_z / 2)
Matrix cphase(double lambda);  // diag(1,1,1,e^{i lambda})
Matrix cnot();  // (1 (x) H) cphase(pi) (1 (x) H)

}  // namespace qclone

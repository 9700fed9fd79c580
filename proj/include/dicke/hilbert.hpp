#pragma once

#include <complex>
#include <cstddef>
#include <utility>

#include <Eigen/Dense>

namespace dicke {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;

// Joint space of the collective spin (J = N/2 sector) and a truncated cavity
// mode. Basis ordering is spin-major: index = spin_index * n_fock + photon
// number, with spin_index = m + J running from 0 (m = -J) upward.
class HilbertSpaceSpec {
 public:
  HilbertSpaceSpec(int n_qubits, int n_fock);

  int n_qubits() const { return n_qubits_; }
  int n_fock() const { return n_fock_; }
  int spin_dim() const { return n_qubits_ + 1; }
  int total_dim() const { return spin_dim() * n_fock_; }
  double spin() const { return 0.5 * n_qubits_; }

  int index(int spin_index, int photons) const { return spin_index * n_fock_ + photons; }

 private:
  int n_qubits_;
  int n_fock_;
};

// Pure state with the unit-norm invariant checked at construction.
class StateVector {
 public:
  explicit StateVector(Eigen::VectorXcd amplitudes);

  static StateVector normalized(Eigen::VectorXcd amplitudes);

  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  double norm() const { return norm_; }

 private:
  Eigen::VectorXcd amplitudes_;
  double norm_;
};

struct BosonOps {
  Operator a;
  Operator a_dag;
  Operator number;
};

Operator build_jz(const HilbertSpaceSpec& spec);
Operator build_jx(const HilbertSpaceSpec& spec);
Operator build_jy(const HilbertSpaceSpec& spec);
// Raising operator J+ with <J,m+1|J+|J,m> = sqrt(J(J+1) - m(m+1)).
Operator build_jplus(const HilbertSpaceSpec& spec);
BosonOps build_boson_ops(const HilbertSpaceSpec& spec);

// Pre-renormalisation weight of the Poisson distribution beyond the cutoff.
double coherent_tail_weight(double n_bar, int n_fock);

inline constexpr double kTruncationTolerance = 1e-8;

// Coherent state with real alpha = +sqrt(n_bar), truncated to n_fock levels
// and renormalised. Throws TruncationError when the discarded tail exceeds
// kTruncationTolerance.
StateVector coherent_state(double n_bar, int n_fock);

// |J,-J> (x) |alpha>.
StateVector initial_state(const HilbertSpaceSpec& spec, double n_bar);

Operator kron(const Operator& a, const Operator& b);
Operator embed_spin(const Operator& spin_op, const HilbertSpaceSpec& spec);
Operator embed_field(const Operator& field_op, const HilbertSpaceSpec& spec);

bool is_hermitian(const Operator& op, double tol = 1e-12);

}  // namespace dicke

#include "dicke/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dicke/errors.hpp"

namespace dicke {

HilbertSpaceSpec::HilbertSpaceSpec(int n_qubits, int n_fock) : n_qubits_(n_qubits), n_fock_(n_fock) {
  if (n_qubits < 2) throw DomainError("n_qubits must be >= 2, got " + std::to_string(n_qubits));
  if (n_fock < 1) throw DomainError("n_fock must be >= 1, got " + std::to_string(n_fock));
}

StateVector::StateVector(Eigen::VectorXcd amplitudes)
    : amplitudes_(std::move(amplitudes)), norm_(amplitudes_.norm()) {
  if (std::abs(norm_ - 1.0) > 1e-10) {
    throw DomainError("state vector is not normalised (norm = " + std::to_string(norm_) + ")");
  }
}

StateVector StateVector::normalized(Eigen::VectorXcd amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0)) throw DomainError("cannot normalise a zero vector");
  amplitudes /= n;
  return StateVector(std::move(amplitudes));
}

Operator build_jz(const HilbertSpaceSpec& spec) {
  const int d = spec.spin_dim();
  Operator jz = Operator::Zero(d, d);
  for (int k = 0; k < d; ++k) jz(k, k) = k - spec.spin();
  return jz;
}

Operator build_jplus(const HilbertSpaceSpec& spec) {
  const int d = spec.spin_dim();
  const double j = spec.spin();
  Operator jp = Operator::Zero(d, d);
  for (int k = 0; k + 1 < d; ++k) {
    const double m = k - j;
    jp(k + 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  return jp;
}

Operator build_jx(const HilbertSpaceSpec& spec) {
  const Operator jp = build_jplus(spec);
  return 0.5 * (jp + jp.adjoint());
}

Operator build_jy(const HilbertSpaceSpec& spec) {
  const Operator jp = build_jplus(spec);
  return (jp - jp.adjoint()) / Complex(0.0, 2.0);
}

BosonOps build_boson_ops(const HilbertSpaceSpec& spec) {
  const int f = spec.n_fock();
  Operator a = Operator::Zero(f, f);
  for (int n = 1; n < f; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  Operator a_dag = a.adjoint();
  Operator number = a_dag * a;
  return {std::move(a), std::move(a_dag), std::move(number)};
}

namespace {

// Poisson amplitudes e^{-n/2} alpha^k / sqrt(k!) in log space.
Eigen::VectorXd poisson_amplitudes(double n_bar, int n_fock) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n_fock);
  if (n_bar == 0.0) {
    c(0) = 1.0;
    return c;
  }
  const double log_alpha = 0.5 * std::log(n_bar);
  for (int k = 0; k < n_fock; ++k) {
    c(k) = std::exp(-0.5 * n_bar + k * log_alpha - 0.5 * std::lgamma(k + 1.0));
  }
  return c;
}

}  // namespace

double coherent_tail_weight(double n_bar, int n_fock) {
  if (!(n_bar >= 0.0)) throw DomainError("n_bar must be >= 0");
  if (n_fock < 1) throw DomainError("n_fock must be >= 1");
  return std::max(0.0, 1.0 - poisson_amplitudes(n_bar, n_fock).squaredNorm());
}

StateVector coherent_state(double n_bar, int n_fock) {
  const double tail = coherent_tail_weight(n_bar, n_fock);
  if (tail > kTruncationTolerance) {
    throw TruncationError("coherent state with n_bar=" + std::to_string(n_bar) + " loses weight " +
                          std::to_string(tail) + " beyond n_fock=" + std::to_string(n_fock));
  }
  return StateVector::normalized(poisson_amplitudes(n_bar, n_fock).cast<Complex>());
}

StateVector initial_state(const HilbertSpaceSpec& spec, double n_bar) {
  const StateVector field = coherent_state(n_bar, spec.n_fock());
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(spec.total_dim());
  psi.head(spec.n_fock()) = field.amplitudes();
  return StateVector(std::move(psi));
}

Operator kron(const Operator& a, const Operator& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    throw DimensionMismatch("kron expects square operators");
  }
  const Eigen::Index ra = a.rows(), rb = b.rows();
  Operator out(ra * rb, ra * rb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ra; ++j) out.block(i * rb, j * rb, rb, rb) = a(i, j) * b;
  }
  return out;
}

Operator embed_spin(const Operator& spin_op, const HilbertSpaceSpec& spec) {
  if (spin_op.rows() != spec.spin_dim()) throw DimensionMismatch("spin operator has wrong dimension");
  return kron(spin_op, Operator::Identity(spec.n_fock(), spec.n_fock()));
}

Operator embed_field(const Operator& field_op, const HilbertSpaceSpec& spec) {
  if (field_op.rows() != spec.n_fock()) throw DimensionMismatch("field operator has wrong dimension");
  return kron(Operator::Identity(spec.spin_dim(), spec.spin_dim()), field_op);
}

bool is_hermitian(const Operator& op, double tol) {
  if (op.rows() != op.cols()) return false;
  return (op - op.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace dicke

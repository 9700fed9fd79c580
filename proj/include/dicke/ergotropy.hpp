#pragma once

#include <Eigen/Dense>

#include "dicke/hilbert.hpp"

namespace dicke {

// Hermitian, unit-trace, positive semidefinite within round-off.
class DensityMatrix {
 public:
  explicit DensityMatrix(Operator entries);

  const Operator& entries() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }

  // Eigenvalues sorted descending, hermitised and clamped (see ergotropy.cpp).
  Eigen::VectorXd populations() const;

 private:
  Operator entries_;
};

class BatteryHamiltonian {
 public:
  // omega0 * J_z on the (N+1)-dimensional collective spin space.
  static BatteryHamiltonian dicke(int n_qubits, double omega0 = 1.0);
  static BatteryHamiltonian from_matrix(Operator matrix);

  const Operator& matrix() const { return matrix_; }
  const Eigen::VectorXd& levels() const { return levels_; }  // ascending
  Eigen::Index dim() const { return matrix_.rows(); }

 private:
  BatteryHamiltonian(Operator matrix, Eigen::VectorXd levels);

  Operator matrix_;
  Eigen::VectorXd levels_;
};

DensityMatrix partial_trace_field(const StateVector& psi, const HilbertSpaceSpec& spec);

// Same contraction on raw amplitudes; used on the hot path where building a
// StateVector per sample is unnecessary.
Operator reduce_to_spin(const Complex* amplitudes, int spin_dim, int n_fock);

double battery_energy(const DensityMatrix& rho, const BatteryHamiltonian& hb);

// Energy of the passive state: descending populations paired with
// ascending levels.
double passive_energy(const Eigen::VectorXd& populations_desc, const Eigen::VectorXd& levels_asc);

double ergotropy(const DensityMatrix& rho, const BatteryHamiltonian& hb);

// W / (N omega0), clamped to [0, 1].
double normalized_ergotropy(const StateVector& psi, const HilbertSpaceSpec& spec, const BatteryHamiltonian& hb,
                            double omega0 = 1.0);

}  // namespace dicke

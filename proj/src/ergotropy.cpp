#include "dicke/ergotropy.hpp"

#include <algorithm>
#include <string>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

constexpr double kNegativeAbort = -1e-8;
constexpr double kErgotropyFloor = -1e-9;

}  // namespace

DensityMatrix::DensityMatrix(Operator entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw DimensionMismatch("density matrix must be square and non-empty");
  }
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw NumericalError("density matrix is not Hermitian");
  }
  if (std::abs(entries_.trace() - Complex(1.0)) > 1e-10) {
    throw NumericalError("density matrix trace differs from 1");
  }
}

Eigen::VectorXd DensityMatrix::populations() const {
  const Operator herm = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw EigSolverFailure("density matrix eigendecomposition failed");
  Eigen::VectorXd r = solver.eigenvalues().reverse();
  if (r.minCoeff() < kNegativeAbort) {
    throw NumericalError("density matrix eigenvalue " + std::to_string(r.minCoeff()) + " is negative");
  }
  r = r.cwiseMax(0.0);
  r /= r.sum();
  return r;
}

BatteryHamiltonian::BatteryHamiltonian(Operator matrix, Eigen::VectorXd levels)
    : matrix_(std::move(matrix)), levels_(std::move(levels)) {}

BatteryHamiltonian BatteryHamiltonian::dicke(int n_qubits, double omega0) {
  if (n_qubits < 1) throw DomainError("battery needs at least one qubit");
  const int d = n_qubits + 1;
  Eigen::VectorXd levels(d);
  for (int k = 0; k < d; ++k) levels(k) = omega0 * (k - 0.5 * n_qubits);
  Operator m = levels.cast<Complex>().asDiagonal();
  return BatteryHamiltonian(std::move(m), std::move(levels));
}

BatteryHamiltonian BatteryHamiltonian::from_matrix(Operator matrix) {
  if (!is_hermitian(matrix)) throw DomainError("battery Hamiltonian must be Hermitian");
  Eigen::SelfAdjointEigenSolver<Operator> solver(matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw EigSolverFailure("battery Hamiltonian eigendecomposition failed");
  Eigen::VectorXd levels = solver.eigenvalues();
  return BatteryHamiltonian(std::move(matrix), std::move(levels));
}

Operator reduce_to_spin(const Complex* amplitudes, int spin_dim, int n_fock) {
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> blocks(amplitudes, spin_dim, n_fock);
  return blocks * blocks.adjoint();
}

DensityMatrix partial_trace_field(const StateVector& psi, const HilbertSpaceSpec& spec) {
  if (psi.dim() != spec.total_dim()) throw DimensionMismatch("state dimension does not match Hilbert space");
  return DensityMatrix(reduce_to_spin(psi.amplitudes().data(), spec.spin_dim(), spec.n_fock()));
}

double battery_energy(const DensityMatrix& rho, const BatteryHamiltonian& hb) {
  if (rho.dim() != hb.dim()) throw DimensionMismatch("density matrix and battery Hamiltonian differ in dimension");
  return (rho.entries() * hb.matrix()).trace().real();
}

double passive_energy(const Eigen::VectorXd& populations_desc, const Eigen::VectorXd& levels_asc) {
  if (populations_desc.size() != levels_asc.size()) throw DimensionMismatch("spectrum sizes differ");
  return populations_desc.dot(levels_asc);
}

double ergotropy(const DensityMatrix& rho, const BatteryHamiltonian& hb) {
  const double w = battery_energy(rho, hb) - passive_energy(rho.populations(), hb.levels());
  if (w < kErgotropyFloor) throw NumericalError("ergotropy is negative: " + std::to_string(w));
  return std::max(w, 0.0);
}

double normalized_ergotropy(const StateVector& psi, const HilbertSpaceSpec& spec, const BatteryHamiltonian& hb,
                            double omega0) {
  const double w = ergotropy(partial_trace_field(psi, spec), hb);
  return std::clamp(w / (spec.n_qubits() * omega0), 0.0, 1.0);
}

}  // namespace dicke

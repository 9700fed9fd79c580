#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dicke/hilbert.hpp"

namespace dicke {

// Frequencies in units of omega0, times in units of 1/omega0.
struct DickeParams {
  int n_qubits = 2;
  double omega0 = 1.0;
  double omega_c = 1.0;
  double lambda = 0.1;
  double n_bar = 1.0;
  int n_fock = 60;

  void validate() const;
  bool resonant() const { return omega0 == omega_c; }
  HilbertSpaceSpec space() const { return HilbertSpaceSpec(n_qubits, n_fock); }
};

// Uniform grid on [0, t_max], both ends included.
class TimeGrid {
 public:
  TimeGrid(double t_max, int n_points);

  static TimeGrid paper_default() { return TimeGrid(45.0, 2000); }

  double t_max() const { return t_max_; }
  int size() const { return n_points_; }
  double step() const { return t_max_ / (n_points_ - 1); }
  double at(int i) const { return i == n_points_ - 1 ? t_max_ : i * step(); }
  std::vector<double> times() const;
  int nearest_index(double t) const;

 private:
  double t_max_;
  int n_points_;
};

Operator build_hamiltonian(const DickeParams& params);

// Spectral decomposition H = U diag(E) U^dagger with the initial state
// expressed in the eigenbasis; evolution is a phase rotation per eigenmode.
class SpectralPropagator {
 public:
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXcd& eigenvectors() const { return eigenvectors_; }
  const Eigen::VectorXcd& initial_coeffs() const { return initial_coeffs_; }
  Eigen::Index dim() const { return eigenvalues_.size(); }

  // Columns are psi(t_k) for the given times, in the original basis.
  Eigen::MatrixXcd evolve_many(const std::vector<double>& times) const;

 private:
  friend SpectralPropagator diagonalize(const Operator& h, const StateVector& psi0);

  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
  std::optional<Eigen::MatrixXd> real_eigenvectors_;
  Eigen::VectorXcd initial_coeffs_;
};

// Throws EigSolverFailure if the Hermitian eigensolver does not converge.
SpectralPropagator diagonalize(const Operator& h, const StateVector& psi0);

// e^{-iHt} psi0.
StateVector evolve(const SpectralPropagator& prop, double t);

struct TrajectoryDiagnostics {
  double max_norm_error = 0.0;        // max_t | ||psi(t)|| - 1 |
  double max_energy_drift = 0.0;      // max_t |<H>(t) - <H>(0)| / max(1, |<H>(0)|)
  double initial_energy = 0.0;
  double truncation_tail = 0.0;       // coherent-state weight beyond the cutoff
};

struct Trajectory {
  DickeParams params;
  TimeGrid grid;
  std::vector<double> eps;
  double eps_max = 0.0;
  TrajectoryDiagnostics diagnostics;
};

Trajectory compute_trajectory(const DickeParams& params, const TimeGrid& grid);

// Normalised ergotropy at the given times by direct propagation.
std::vector<double> ergotropy_at(const DickeParams& params, const std::vector<double>& times);

}  // namespace dicke

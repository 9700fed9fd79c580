#include "dicke/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dicke/ergotropy.hpp"
#include "dicke/errors.hpp"

namespace dicke {

void DickeParams::validate() const {
  if (n_qubits < 2) throw DomainError("n_qubits must be >= 2");
  if (!(omega0 > 0.0)) throw DomainError("omega0 must be > 0");
  if (!(omega_c > 0.0)) throw DomainError("omega_c must be > 0");
  if (!(lambda > 0.0)) throw DomainError("lambda must be > 0");
  if (!(n_bar >= 0.0)) throw DomainError("n_bar must be >= 0");
  if (n_fock < 1) throw DomainError("n_fock must be >= 1");
}

TimeGrid::TimeGrid(double t_max, int n_points) : t_max_(t_max), n_points_(n_points) {
  if (!(t_max > 0.0)) throw DomainError("t_max must be > 0");
  if (n_points < 2) throw DomainError("time grid needs at least 2 points");
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> t(n_points_);
  for (int i = 0; i < n_points_; ++i) t[i] = at(i);
  return t;
}

int TimeGrid::nearest_index(double t) const {
  const long i = std::lround(t / step());
  return static_cast<int>(std::clamp<long>(i, 0, n_points_ - 1));
}

Operator build_hamiltonian(const DickeParams& params) {
  params.validate();
  const HilbertSpaceSpec spec = params.space();
  const BosonOps boson = build_boson_ops(spec);
  const double g = 2.0 * params.lambda / std::sqrt(static_cast<double>(params.n_qubits));
  return params.omega0 * embed_spin(build_jz(spec), spec) + params.omega_c * embed_field(boson.number, spec) +
         g * kron(build_jx(spec), boson.a + boson.a_dag);
}

SpectralPropagator diagonalize(const Operator& h, const StateVector& psi0) {
  if (h.rows() != h.cols() || h.rows() != psi0.dim()) {
    throw DimensionMismatch("Hamiltonian and state dimensions differ");
  }
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (!is_hermitian(h, 1e-12 * scale)) throw DomainError("Hamiltonian is not Hermitian");

  SpectralPropagator prop;
  if (h.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.real());
    if (solver.info() != Eigen::Success) throw EigSolverFailure("Hamiltonian eigensolver did not converge");
    prop.eigenvalues_ = solver.eigenvalues();
    prop.real_eigenvectors_ = solver.eigenvectors();
    prop.eigenvectors_ = solver.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) throw EigSolverFailure("Hamiltonian eigensolver did not converge");
    prop.eigenvalues_ = solver.eigenvalues();
    prop.eigenvectors_ = solver.eigenvectors();
  }
  prop.initial_coeffs_ = prop.eigenvectors_.adjoint() * psi0.amplitudes();
  return prop;
}

Eigen::MatrixXcd SpectralPropagator::evolve_many(const std::vector<double>& times) const {
  const Eigen::Index d = dim();
  const Eigen::Index n = static_cast<Eigen::Index>(times.size());
  Eigen::MatrixXcd rotated(d, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double t = times[k];
    for (Eigen::Index j = 0; j < d; ++j) {
      const double phase = -eigenvalues_(j) * t;
      rotated(j, k) = initial_coeffs_(j) * Complex(std::cos(phase), std::sin(phase));
    }
  }
  if (!real_eigenvectors_) return eigenvectors_ * rotated;

  // Real basis: two real products instead of one complex one.
  const Eigen::MatrixXd re = *real_eigenvectors_ * rotated.real();
  const Eigen::MatrixXd im = *real_eigenvectors_ * rotated.imag();
  Eigen::MatrixXcd out(d, n);
  out.real() = re;
  out.imag() = im;
  return out;
}

StateVector evolve(const SpectralPropagator& prop, double t) {
  if (t < 0.0) throw DomainError("evolution time must be >= 0");
  Eigen::VectorXcd psi = prop.evolve_many({t}).col(0);
  return StateVector::normalized(std::move(psi));
}

namespace {

constexpr Eigen::Index kChunk = 256;

struct Engine {
  DickeParams params;
  HilbertSpaceSpec spec;
  Operator h;
  StateVector psi0;
  SpectralPropagator prop;
  BatteryHamiltonian hb;
  double tail;

  explicit Engine(const DickeParams& p)
      : params(p),
        spec(p.space()),
        h(build_hamiltonian(p)),
        psi0(initial_state(spec, p.n_bar)),
        prop(diagonalize(h, psi0)),
        hb(BatteryHamiltonian::dicke(p.n_qubits, p.omega0)),
        tail(coherent_tail_weight(p.n_bar, p.n_fock)) {}

  double eps_of(const Complex* amplitudes) const {
    const DensityMatrix rho(reduce_to_spin(amplitudes, spec.spin_dim(), spec.n_fock()));
    const double w = ergotropy(rho, hb);
    return std::clamp(w / (spec.n_qubits() * params.omega0), 0.0, 1.0);
  }
};

}  // namespace

Trajectory compute_trajectory(const DickeParams& params, const TimeGrid& grid) {
  const Engine engine(params);
  const std::vector<double> times = grid.times();

  Trajectory traj{params, grid, std::vector<double>(times.size()), 0.0, {}};
  TrajectoryDiagnostics& diag = traj.diagnostics;
  diag.truncation_tail = engine.tail;
  diag.initial_energy = engine.psi0.amplitudes().dot(engine.h * engine.psi0.amplitudes()).real();
  const double energy_scale = std::max(1.0, std::abs(diag.initial_energy));
  const bool real_h = engine.h.imag().cwiseAbs().maxCoeff() == 0.0;
  const Eigen::MatrixXd h_real = engine.h.real();

  for (std::size_t start = 0; start < times.size(); start += kChunk) {
    const std::size_t stop = std::min(times.size(), start + kChunk);
    const std::vector<double> chunk(times.begin() + start, times.begin() + stop);
    const Eigen::MatrixXcd psi = engine.prop.evolve_many(chunk);

    Eigen::MatrixXcd h_psi(psi.rows(), psi.cols());
    if (real_h) {
      h_psi.real() = h_real * psi.real();
      h_psi.imag() = h_real * psi.imag();
    } else {
      h_psi = engine.h * psi;
    }

    for (Eigen::Index k = 0; k < psi.cols(); ++k) {
      const double norm = psi.col(k).norm();
      diag.max_norm_error = std::max(diag.max_norm_error, std::abs(norm - 1.0));
      const double energy = psi.col(k).dot(h_psi.col(k)).real();
      diag.max_energy_drift = std::max(diag.max_energy_drift, std::abs(energy - diag.initial_energy) / energy_scale);
      const double e = engine.eps_of(psi.col(k).data());
      traj.eps[start + k] = e;
      traj.eps_max = std::max(traj.eps_max, e);
    }
  }
  return traj;
}

std::vector<double> ergotropy_at(const DickeParams& params, const std::vector<double>& times) {
  for (double t : times) {
    if (t < 0.0) throw DomainError("evolution time must be >= 0");
  }
  const Engine engine(params);
  const Eigen::MatrixXcd psi = engine.prop.evolve_many(times);
  std::vector<double> out(times.size());
  for (Eigen::Index k = 0; k < psi.cols(); ++k) out[k] = engine.eps_of(psi.col(k).data());
  return out;
}

}  // namespace dicke

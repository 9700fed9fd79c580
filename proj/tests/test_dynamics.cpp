#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dicke/dynamics.hpp"
#include "dicke/ergotropy.hpp"
#include "dicke/errors.hpp"
#include "dicke/qsl.hpp"

using namespace dicke;

namespace {

// Cyclic Jacobi eigenvalue iteration for a real symmetric matrix.
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Matrix elements of the Dicke Hamiltonian written out directly in the
// |m, n> basis, independently of the operator-algebra construction.
std::vector<std::vector<double>> explicit_dicke_matrix(int n_qubits, int n_fock, double lambda) {
  const double j = 0.5 * n_qubits;
  const int ds = n_qubits + 1, dim = ds * n_fock;
  std::vector<std::vector<double>> h(dim, std::vector<double>(dim, 0.0));
  const double g = 2.0 * lambda / std::sqrt(static_cast<double>(n_qubits));
  for (int k = 0; k < ds; ++k) {
    const double m = k - j;
    for (int n = 0; n < n_fock; ++n) {
      const int row = k * n_fock + n;
      h[row][row] = m + n;
      for (int k2 = 0; k2 < ds; ++k2) {
        const double m2 = k2 - j;
        double jx = 0.0;
        if (k2 == k + 1) jx = 0.5 * std::sqrt(j * (j + 1) - m * (m + 1));
        if (k2 == k - 1) jx = 0.5 * std::sqrt(j * (j + 1) - m2 * (m2 + 1));
        if (jx == 0.0) continue;
        for (int n2 = 0; n2 < n_fock; ++n2) {
          double x = 0.0;
          if (n2 == n + 1) x = std::sqrt(n + 1.0);
          if (n2 == n - 1) x = std::sqrt(static_cast<double>(n));
          h[k2 * n_fock + n2][row] += g * jx * x;
        }
      }
    }
  }
  return h;
}

DickeParams params(int n, double lambda, double n_bar, int n_fock = 40) {
  DickeParams p;
  p.n_qubits = n;
  p.lambda = lambda;
  p.n_bar = n_bar;
  p.n_fock = n_fock;
  return p;
}

}  // namespace

TEST_CASE("parameter and grid validation") {
  CHECK_THROWS_AS(params(2, 0.0, 1.0).validate(), DomainError);
  CHECK_THROWS_AS(params(1, 0.1, 1.0).validate(), DomainError);
  CHECK_THROWS_AS(params(2, 0.1, -1.0).validate(), DomainError);
  CHECK_THROWS_AS(TimeGrid(0.0, 10), DomainError);
  CHECK_THROWS_AS(TimeGrid(1.0, 1), DomainError);

  const TimeGrid g = TimeGrid::paper_default();
  const auto t = g.times();
  CHECK(t.size() == 2000);
  CHECK(t.front() == 0.0);
  CHECK(t.back() == 45.0);
  for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] > t[i - 1]);
  CHECK(g.step() == doctest::Approx(45.0 / 1999.0));
  CHECK(g.nearest_index(0.1) == 4);
}

TEST_CASE("Hamiltonian structure") {
  const Operator h = build_hamiltonian(params(3, 0.7, 2.0, 10));
  CHECK(h.rows() == 40);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-14);

  // Decoupled limit: spectrum {m omega0 + n omega_c}.
  DickeParams p = params(2, 1e-13, 1.0, 6);
  p.omega_c = 1.37;
  const Operator h0 = build_hamiltonian(p);
  Eigen::SelfAdjointEigenSolver<Operator> solver(h0);
  std::vector<double> expected;
  for (int k = 0; k < 3; ++k)
    for (int n = 0; n < 6; ++n) expected.push_back((k - 1.0) + 1.37 * n);
  std::sort(expected.begin(), expected.end());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(std::abs(solver.eigenvalues()(i) - expected[i]) < 1e-11);
}

TEST_CASE("ground energy matches an independent small-matrix diagonalisation") {
  const Operator h = build_hamiltonian(params(2, 0.5, 0.0, 2));
  Eigen::SelfAdjointEigenSolver<Operator> solver(h);
  const auto reference = jacobi_eigenvalues(explicit_dicke_matrix(2, 2, 0.5));
  REQUIRE(reference.size() == 6);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(solver.eigenvalues()(i) - reference[i]) < 1e-12);
}

TEST_CASE("propagator basics") {
  const DickeParams p = params(2, 0.8, 3.0, 40);
  const StateVector psi0 = initial_state(p.space(), p.n_bar);
  const Operator h = build_hamiltonian(p);
  const SpectralPropagator prop = diagonalize(h, psi0);

  const Eigen::MatrixXcd& u = prop.eigenvectors();
  CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() < 1e-10);
  const Operator rebuilt = u * prop.eigenvalues().cast<Complex>().asDiagonal() * u.adjoint();
  CHECK((rebuilt - h).cwiseAbs().maxCoeff() < 1e-9 * h.cwiseAbs().maxCoeff());

  CHECK((evolve(prop, 0.0).amplitudes() - psi0.amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(evolve(prop, -1.0), DomainError);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ut(0.0, 45.0);
  std::vector<double> times(100);
  for (auto& t : times) t = ut(rng);
  const Eigen::MatrixXcd many = prop.evolve_many(times);
  for (Eigen::Index k = 0; k < many.cols(); ++k) CHECK(std::abs(many.col(k).norm() - 1.0) < 1e-10);

  for (int trial = 0; trial < 10; ++trial) {
    const double t1 = ut(rng), t2 = ut(rng);
    const StateVector mid = evolve(prop, t1);
    const SpectralPropagator from_mid = diagonalize(h, mid);
    const auto direct = evolve(prop, t1 + t2).amplitudes();
    const auto chained = evolve(from_mid, t2).amplitudes();
    CHECK((direct - chained).cwiseAbs().maxCoeff() < 1e-10);
  }

  CHECK_THROWS_AS(diagonalize(h, StateVector::normalized(Eigen::VectorXcd::Ones(5))), DimensionMismatch);
  Operator non_herm = h;
  non_herm(0, 1) += 1.0;
  CHECK_THROWS_AS(diagonalize(non_herm, psi0), DomainError);
}

TEST_CASE("Rabi oscillation of a two-level system") {
  Operator sx = Operator::Zero(2, 2);
  sx(0, 1) = sx(1, 0) = 1.0;
  Eigen::VectorXcd up(2);
  up << 1.0, 0.0;
  const SpectralPropagator prop = diagonalize(sx, StateVector(up));
  for (double t : {0.0, 0.3, 1.0, 2.5, 7.0}) {
    const auto psi = evolve(prop, t).amplitudes();
    CHECK(std::abs(std::norm(psi(1)) - std::sin(t) * std::sin(t)) < 1e-12);
  }

  // Complex Hermitian path: sigma_y.
  Operator sy = Operator::Zero(2, 2);
  sy(0, 1) = Complex(0, -1);
  sy(1, 0) = Complex(0, 1);
  const SpectralPropagator py = diagonalize(sy, StateVector(up));
  CHECK(std::abs(std::norm(evolve(py, 0.7).amplitudes()(1)) - std::sin(0.7) * std::sin(0.7)) < 1e-12);
}

TEST_CASE("trajectory invariants") {
  const TimeGrid grid(10.0, 400);
  const Trajectory traj = compute_trajectory(params(3, 0.5, 5.0, 40), grid);
  CHECK(traj.eps.size() == 400);
  CHECK(std::abs(traj.eps[0]) < 1e-9);
  for (double e : traj.eps) {
    CHECK(e >= 0.0);
    CHECK(e <= 1.0);
  }
  CHECK(traj.diagnostics.max_norm_error < 1e-9);
  CHECK(traj.diagnostics.max_energy_drift < 1e-8);
  CHECK(traj.diagnostics.initial_energy == doctest::Approx(5.0 - 1.5).epsilon(1e-12));
  CHECK(traj.eps_max == *std::max_element(traj.eps.begin(), traj.eps.end()));
}

TEST_CASE("decoupled battery stays uncharged") {
  const Trajectory traj = compute_trajectory(params(2, 1e-12, 5.0, 40), TimeGrid(20.0, 200));
  CHECK(traj.eps_max < 1e-12);
}

TEST_CASE("parity is conserved") {
  const DickeParams p = params(2, 1.2, 4.0, 40);
  const HilbertSpaceSpec s = p.space();
  Eigen::VectorXd parity(s.total_dim());
  for (int k = 0; k < s.spin_dim(); ++k)
    for (int n = 0; n < s.n_fock(); ++n) parity(s.index(k, n)) = ((k + n) % 2 == 0) ? 1.0 : -1.0;
  const Operator h = build_hamiltonian(p);
  const Operator pi = parity.cast<Complex>().asDiagonal();
  CHECK((h * pi - pi * h).cwiseAbs().maxCoeff() < 1e-12);

  const StateVector psi0 = initial_state(s, p.n_bar);
  const SpectralPropagator prop = diagonalize(h, psi0);
  const double p0 = psi0.amplitudes().dot(pi * psi0.amplitudes()).real();
  for (double t : {0.5, 3.0, 17.0, 44.0}) {
    const auto psi = evolve(prop, t).amplitudes();
    CHECK(std::abs(psi.dot(pi * psi).real() - p0) < 1e-9);
  }
}

TEST_CASE("short-time lambda scaling") {
  // eps ~ A lambda^2 n_bar t^2, so doubling lambda quadruples eps.
  for (int n : {2, 4}) {
    const double t = 0.005;
    const double lam = 0.2, n_bar = 3.0;
    REQUIRE(4 * lam * lam * n_bar * t * t < 1e-3);
    const double e1 = ergotropy_at(params(n, lam, n_bar), {t}).front();
    const double e2 = ergotropy_at(params(n, 2 * lam, n_bar), {t}).front();
    CHECK(std::abs(e2 / e1 / 4.0 - 1.0) < 0.01);
  }
}

TEST_CASE("published trajectory checkpoints") {
  const Trajectory strong = compute_trajectory(params(2, 2.0, 10.0, 40), TimeGrid::paper_default());
  double best = 0.0, best_t = 0.0;
  for (int i = 0; strong.grid.at(i) <= 0.25; ++i) {
    if (strong.eps[i] > best) {
      best = strong.eps[i];
      best_t = strong.grid.at(i);
    }
  }
  CHECK(best == doctest::Approx(0.88).epsilon(0.01));
  CHECK(std::abs(best_t - 0.17) < 0.02);

  const Trajectory weak = compute_trajectory(params(2, 0.1, 1.0, 40), TimeGrid::paper_default());
  CHECK(extract_short_time_coefficient(weak) == doctest::Approx(1.9930).epsilon(5e-3));
  CHECK(weak.eps[0] == 0.0);
}

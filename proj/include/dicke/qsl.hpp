#pragma once

#include <optional>
#include <span>

#include "dicke/dynamics.hpp"

namespace dicke {

// Composite charging rate Gamma_N = 2 lambda sqrt(n_bar / N).
double gamma_n(double lambda, double n_bar, int n_qubits);

// Classical-field spin rotation frequency Omega_N = 4 lambda sqrt(n_bar / N).
double omega_n(double lambda, double n_bar, int n_qubits);

// tau_QSL = sqrt(N eps) / (2 lambda sqrt(n_bar)) = sqrt(eps) / Gamma_N.
double tau_qsl(double eps, double lambda, double n_bar, int n_qubits);

// Smallest coupling that can reach eps by tau_target: the QSL solved for lambda.
double min_coupling_for_target(double eps, double tau_target, double n_bar, int n_qubits);

// (4/N) lambda^2 n_bar t^2. Deliberately not clipped at 1.
double global_bound(double t, double lambda, double n_bar, int n_qubits);

// [1 - cos(Omega_N t)] / 2.
double classical_field_eps(double t, double lambda, double n_bar, int n_qubits);

inline double short_time_coefficient_theory(int n_qubits) { return 4.0 / n_qubits; }

struct Passage {
  int index = 0;            // first grid sample with eps >= target
  double grid_time = 0.0;   // times[index]
  double interp_time = 0.0; // linear interpolation between index-1 and index
};

// inf{t : eps(t) >= target} on a sampled curve; nullopt if never reached.
// Throws InvalidThreshold unless 0 < target <= 1.
std::optional<Passage> first_passage(std::span<const double> times, std::span<const double> eps, double target);
std::optional<Passage> first_passage(const Trajectory& traj, double target);

// A_num = eps(t) / (lambda^2 n_bar t^2) read off the trajectory at the grid
// sample nearest t_probe.
inline constexpr double kDefaultProbeTime = 0.1;
double extract_short_time_coefficient(const Trajectory& traj, double t_probe = kDefaultProbeTime);

// Same ratio at exactly time t, by a dedicated propagation.
double short_time_coefficient_at(const DickeParams& params, double t);

struct CollapsePoint {
  int n_qubits = 0;
  double lambda = 0.0;
  double n_bar = 0.0;
  double eps = 0.0;
  double tau_star = 0.0;         // grid-crossing first-passage time
  double tau_star_interp = 0.0;  // linearly interpolated first-passage time
  double tau_qsl = 0.0;
  double gamma_n = 0.0;
  double x = 0.0;                // gamma_n * tau_star
  double ratio = 0.0;            // tau_star / tau_qsl
};

CollapsePoint make_collapse_point(int n_qubits, double lambda, double n_bar, double eps, const Passage& passage);
std::optional<CollapsePoint> make_collapse_point(const Trajectory& traj, double eps_target);

}  // namespace dicke

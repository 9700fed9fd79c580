#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dicke/qsl.hpp"

namespace dicke {

struct SweepConfig {
  std::vector<int> n_qubits_list{2, 3, 4, 5};
  std::vector<double> lambda_grid{0.1, 0.2, 0.3, 0.5, 0.7, 1.0, 1.5, 2.0};
  std::vector<double> n_bar_grid{1, 2, 3, 5, 10, 15, 20};
  std::vector<double> eps_grid = linspace(0.02, 0.96, 50);
  double t_max = 45.0;
  int n_points = 2000;
  int n_fock = 60;
  double omega0 = 1.0;
  double omega_c = 1.0;
  int envelope_bins = 50;

  // Throws ConfigError on empty, unsorted or out-of-domain grids.
  void validate() const;
  TimeGrid grid() const { return TimeGrid(t_max, n_points); }

  static std::vector<double> linspace(double lo, double hi, int n);
};

struct SweepFailure {
  int n_qubits = 0;
  double lambda = 0.0;
  double n_bar = 0.0;
  std::string cause;
};

// Per-(N, lambda, n_bar) trajectory record kept after the eps targets are read off.
struct TrajectorySummary {
  int n_qubits = 0;
  double lambda = 0.0;
  double n_bar = 0.0;
  double eps_max = 0.0;
  double max_bound_excess = 0.0;  // max_t eps(t) - (4/N) lambda^2 n_bar t^2
  TrajectoryDiagnostics diagnostics;
};

struct NSummary {
  int n_qubits = 0;
  int valid_count = 0;
  int candidate_count = 0;
  int violations = 0;
  double min_ratio = 0.0;
  double median_ratio = 0.0;
  double min_ratio_interp = 0.0;
  double median_ratio_interp = 0.0;
};

inline constexpr double kViolationSlack = 1e-9;

struct SweepResult {
  SweepConfig config;
  std::vector<CollapsePoint> points;  // ordered by (N, lambda, n_bar, eps)
  std::vector<TrajectorySummary> trajectories;
  std::vector<SweepFailure> failures;
  std::vector<NSummary> summaries;
  int violation_count = 0;
};

// One trajectory per (N, lambda, n_bar); the eps targets share it. The output
// does not depend on `workers`.
SweepResult run_sweep(const SweepConfig& config, unsigned workers = 1);

// Min/median of tau*/tau_QSL per N and the X < sqrt(eps) - slack count.
std::vector<NSummary> collapse_statistics(const std::vector<CollapsePoint>& points, const SweepConfig& config);
int count_violations(const std::vector<CollapsePoint>& points, double slack = kViolationSlack);

double median(std::vector<double> values);

struct EnvelopeBin {
  double center = 0.0;
  double left = 0.0;
  double right = 0.0;
  std::optional<double> x_min;
};

// Bins centred on linspace(lo, hi, n_bins), so that with n_bins equal to the
// eps-grid size each bin holds one grid value.
std::vector<EnvelopeBin> lower_envelope(const std::vector<CollapsePoint>& points, int n_bins, double lo = 0.02,
                                        double hi = 0.96);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  int n = 0;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct TauFit {
  int n_qubits = 0;
  double eps = 0.0;  // grid value actually used
  LinearFit fit;
};

// Least-squares tau* against 1/Gamma_N over points at the eps value nearest
// `eps_target` for the given N.
TauFit fit_tau_vs_inverse_gamma(const std::vector<CollapsePoint>& points, int n_qubits, double eps_target = 0.5);

struct Table1Row {
  int n_qubits = 0;
  double lambda = 0.0;
  double n_bar = 0.0;
  double t_probe = 0.0;
  double a_num = 0.0;
  double a_th = 0.0;
  double err_percent = 0.0;
};

// A_num at the default-grid sample nearest t = 0.1 for lambda in
// {0.1, 0.3, 0.5, 1.0} x n_bar in {1, 5, 10}.
std::vector<Table1Row> table1_rows(const std::vector<int>& n_qubits_list, int n_fock, const TimeGrid& grid);

}  // namespace dicke

#include "dicke/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "dicke/errors.hpp"

namespace dicke {

std::vector<double> SweepConfig::linspace(double lo, double hi, int n) {
  if (n < 1) throw ConfigError("linspace needs at least one point");
  if (n == 1) return {lo};
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  v.back() = hi;
  return v;
}

namespace {

template <typename T>
void require_increasing(const std::vector<T>& v, const char* name) {
  if (v.empty()) throw ConfigError(std::string(name) + " is empty");
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) throw ConfigError(std::string(name) + " is not strictly increasing");
  }
}

}  // namespace

void SweepConfig::validate() const {
  require_increasing(n_qubits_list, "n_qubits");
  require_increasing(lambda_grid, "lambda");
  require_increasing(n_bar_grid, "n_bar");
  require_increasing(eps_grid, "eps");
  if (n_qubits_list.front() < 2) throw ConfigError("n_qubits values must be >= 2");
  if (!(lambda_grid.front() > 0.0)) throw ConfigError("lambda values must be > 0");
  if (!(n_bar_grid.front() > 0.0)) throw ConfigError("n_bar values must be > 0");
  if (!(eps_grid.front() > 0.0 && eps_grid.back() <= 1.0)) throw ConfigError("eps values must lie in (0, 1]");
  if (!(t_max > 0.0)) throw ConfigError("t_max must be > 0");
  if (n_points < 2) throw ConfigError("n_points must be >= 2");
  if (n_fock < 1) throw ConfigError("n_fock must be >= 1");
  if (!(omega0 > 0.0) || !(omega_c > 0.0)) throw ConfigError("frequencies must be > 0");
  if (envelope_bins < 1) throw ConfigError("envelope_bins must be >= 1");
}

namespace {

struct Task {
  int n_qubits;
  double lambda;
  double n_bar;
};

struct TaskOutput {
  std::optional<TrajectorySummary> summary;
  std::vector<CollapsePoint> points;
  std::optional<SweepFailure> failure;
};

TaskOutput run_task(const Task& task, const SweepConfig& config, const TimeGrid& grid) {
  TaskOutput out;
  try {
    DickeParams p;
    p.n_qubits = task.n_qubits;
    p.lambda = task.lambda;
    p.n_bar = task.n_bar;
    p.n_fock = config.n_fock;
    p.omega0 = config.omega0;
    p.omega_c = config.omega_c;
    const Trajectory traj = compute_trajectory(p, grid);

    TrajectorySummary s{task.n_qubits, task.lambda, task.n_bar, traj.eps_max,
                        -std::numeric_limits<double>::infinity(), traj.diagnostics};
    for (int i = 0; i < grid.size(); ++i) {
      const double bound = global_bound(grid.at(i), task.lambda, task.n_bar, task.n_qubits);
      s.max_bound_excess = std::max(s.max_bound_excess, traj.eps[i] - bound);
    }
    out.summary = s;

    const std::vector<double> times = grid.times();
    for (double eps : config.eps_grid) {
      if (auto passage = first_passage(times, traj.eps, eps)) {
        out.points.push_back(make_collapse_point(task.n_qubits, task.lambda, task.n_bar, eps, *passage));
      }
    }
  } catch (const std::exception& e) {
    out.failure = SweepFailure{task.n_qubits, task.lambda, task.n_bar, e.what()};
  }
  return out;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config, unsigned workers) {
  config.validate();
  const TimeGrid grid = config.grid();

  std::vector<Task> tasks;
  for (int n : config.n_qubits_list)
    for (double l : config.lambda_grid)
      for (double nb : config.n_bar_grid) tasks.push_back({n, l, nb});

  std::vector<TaskOutput> outputs(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) outputs[i] = run_task(tasks[i], config, grid);
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(tasks.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }

  SweepResult result;
  result.config = config;
  for (auto& out : outputs) {
    if (out.failure) result.failures.push_back(std::move(*out.failure));
    if (out.summary) result.trajectories.push_back(*out.summary);
    result.points.insert(result.points.end(), out.points.begin(), out.points.end());
  }
  result.summaries = collapse_statistics(result.points, config);
  result.violation_count = count_violations(result.points);
  return result;
}

double median(std::vector<double> values) {
  if (values.empty()) throw DomainError("median of empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

int count_violations(const std::vector<CollapsePoint>& points, double slack) {
  return static_cast<int>(std::count_if(points.begin(), points.end(), [slack](const CollapsePoint& c) {
    return c.x < std::sqrt(c.eps) - slack;
  }));
}

std::vector<NSummary> collapse_statistics(const std::vector<CollapsePoint>& points, const SweepConfig& config) {
  std::vector<NSummary> out;
  const int candidates = static_cast<int>(config.lambda_grid.size() * config.n_bar_grid.size() * config.eps_grid.size());
  for (int n : config.n_qubits_list) {
    NSummary s;
    s.n_qubits = n;
    s.candidate_count = candidates;
    std::vector<double> ratios, ratios_interp;
    for (const auto& c : points) {
      if (c.n_qubits != n) continue;
      ratios.push_back(c.ratio);
      ratios_interp.push_back(c.tau_star_interp / c.tau_qsl);
      if (c.x < std::sqrt(c.eps) - kViolationSlack) ++s.violations;
    }
    s.valid_count = static_cast<int>(ratios.size());
    if (!ratios.empty()) {
      s.min_ratio = *std::min_element(ratios.begin(), ratios.end());
      s.median_ratio = median(ratios);
      s.min_ratio_interp = *std::min_element(ratios_interp.begin(), ratios_interp.end());
      s.median_ratio_interp = median(ratios_interp);
    }
    out.push_back(s);
  }
  return out;
}

std::vector<EnvelopeBin> lower_envelope(const std::vector<CollapsePoint>& points, int n_bins, double lo, double hi) {
  if (points.empty()) throw DomainError("lower envelope of an empty point set");
  if (n_bins < 1) throw DomainError("n_bins must be >= 1");
  const double width = n_bins == 1 ? (hi - lo) : (hi - lo) / (n_bins - 1);
  const std::vector<double> centers = SweepConfig::linspace(lo, hi, n_bins);
  std::vector<EnvelopeBin> bins(n_bins);
  for (int b = 0; b < n_bins; ++b) {
    bins[b].center = n_bins == 1 ? 0.5 * (lo + hi) : centers[b];
    bins[b].left = bins[b].center - 0.5 * width;
    bins[b].right = bins[b].center + 0.5 * width;
  }
  for (const auto& c : points) {
    const long b = n_bins == 1 ? 0 : std::lround((c.eps - lo) / width);
    if (b < 0 || b >= n_bins) continue;
    auto& slot = bins[b].x_min;
    if (!slot || c.x < *slot) slot = c.x;
  }
  return bins;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DimensionMismatch("fit inputs differ in length");
  if (x.size() < 2) throw DomainError("linear fit needs at least 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("linear fit with degenerate abscissae");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx, static_cast<int>(x.size())};
}

TauFit fit_tau_vs_inverse_gamma(const std::vector<CollapsePoint>& points, int n_qubits, double eps_target) {
  std::optional<double> chosen;
  for (const auto& c : points) {
    if (c.n_qubits != n_qubits) continue;
    if (!chosen || std::abs(c.eps - eps_target) < std::abs(*chosen - eps_target)) chosen = c.eps;
  }
  if (!chosen) throw DomainError("no points for N = " + std::to_string(n_qubits));
  std::vector<double> inv_gamma, tau;
  for (const auto& c : points) {
    if (c.n_qubits == n_qubits && c.eps == *chosen) {
      inv_gamma.push_back(1.0 / c.gamma_n);
      tau.push_back(c.tau_star);
    }
  }
  if (inv_gamma.size() < 2) throw DomainError("fewer than 2 points at the chosen eps");
  return {n_qubits, *chosen, fit_line(inv_gamma, tau)};
}

std::vector<Table1Row> table1_rows(const std::vector<int>& n_qubits_list, int n_fock, const TimeGrid& grid) {
  const double t = grid.at(grid.nearest_index(kDefaultProbeTime));
  std::vector<Table1Row> rows;
  for (int n : n_qubits_list) {
    for (double l : {0.1, 0.3, 0.5, 1.0}) {
      for (double nb : {1.0, 5.0, 10.0}) {
        DickeParams p;
        p.n_qubits = n;
        p.lambda = l;
        p.n_bar = nb;
        p.n_fock = n_fock;
        Table1Row r{n, l, nb, t, short_time_coefficient_at(p, t), short_time_coefficient_theory(n), 0.0};
        r.err_percent = 100.0 * std::abs(r.a_num - r.a_th) / r.a_th;
        rows.push_back(r);
      }
    }
  }
  return rows;
}

}  // namespace dicke

#include "dicke/qsl.hpp"

#include <cmath>
#include <string>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

void require_rate_inputs(double lambda, double n_bar, int n_qubits) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be > 0");
  if (!(n_bar > 0.0)) throw DomainError("n_bar must be > 0");
  if (n_qubits < 1) throw DomainError("n_qubits must be >= 1");
}

void require_eps(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidThreshold("eps must lie in (0, 1], got " + std::to_string(eps));
}

}  // namespace

double gamma_n(double lambda, double n_bar, int n_qubits) {
  require_rate_inputs(lambda, n_bar, n_qubits);
  return 2.0 * lambda * std::sqrt(n_bar / n_qubits);
}

double omega_n(double lambda, double n_bar, int n_qubits) { return 2.0 * gamma_n(lambda, n_bar, n_qubits); }

double tau_qsl(double eps, double lambda, double n_bar, int n_qubits) {
  require_eps(eps);
  require_rate_inputs(lambda, n_bar, n_qubits);
  return std::sqrt(n_qubits * eps) / (2.0 * lambda * std::sqrt(n_bar));
}

double min_coupling_for_target(double eps, double tau_target, double n_bar, int n_qubits) {
  require_eps(eps);
  if (!(tau_target > 0.0)) throw DomainError("tau_target must be > 0");
  if (!(n_bar > 0.0)) throw DomainError("n_bar must be > 0");
  return std::sqrt(n_qubits * eps) / (2.0 * tau_target * std::sqrt(n_bar));
}

double global_bound(double t, double lambda, double n_bar, int n_qubits) {
  if (t < 0.0) throw DomainError("t must be >= 0");
  return 4.0 / n_qubits * lambda * lambda * n_bar * t * t;
}

double classical_field_eps(double t, double lambda, double n_bar, int n_qubits) {
  if (t < 0.0) throw DomainError("t must be >= 0");
  return 0.5 * (1.0 - std::cos(omega_n(lambda, n_bar, n_qubits) * t));
}

std::optional<Passage> first_passage(std::span<const double> times, std::span<const double> eps, double target) {
  require_eps(target);
  if (times.size() != eps.size()) throw DimensionMismatch("times and eps differ in length");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (eps[i] < target) continue;
    Passage p{static_cast<int>(i), times[i], times[i]};
    if (i > 0) {
      const double lo = eps[i - 1], hi = eps[i];
      const double frac = (target - lo) / (hi - lo);
      p.interp_time = times[i - 1] + frac * (times[i] - times[i - 1]);
    }
    return p;
  }
  return std::nullopt;
}

std::optional<Passage> first_passage(const Trajectory& traj, double target) {
  const std::vector<double> times = traj.grid.times();
  return first_passage(times, traj.eps, target);
}

double extract_short_time_coefficient(const Trajectory& traj, double t_probe) {
  if (!(t_probe > 0.0) || t_probe > traj.grid.t_max()) {
    throw DomainError("probe time " + std::to_string(t_probe) + " is outside the time grid");
  }
  const int i = traj.grid.nearest_index(t_probe);
  if (i == 0) throw DomainError("probe time rounds to t = 0 on this grid");
  const double t = traj.grid.at(i);
  const auto& p = traj.params;
  return traj.eps[i] / (p.lambda * p.lambda * p.n_bar * t * t);
}

double short_time_coefficient_at(const DickeParams& params, double t) {
  if (!(t > 0.0)) throw DomainError("probe time must be > 0");
  if (!(params.n_bar > 0.0)) throw DomainError("n_bar must be > 0");
  const double eps = ergotropy_at(params, {t}).front();
  return eps / (params.lambda * params.lambda * params.n_bar * t * t);
}

CollapsePoint make_collapse_point(int n_qubits, double lambda, double n_bar, double eps, const Passage& passage) {
  CollapsePoint c;
  c.n_qubits = n_qubits;
  c.lambda = lambda;
  c.n_bar = n_bar;
  c.eps = eps;
  c.tau_star = passage.grid_time;
  c.tau_star_interp = passage.interp_time;
  c.tau_qsl = tau_qsl(eps, lambda, n_bar, n_qubits);
  c.gamma_n = gamma_n(lambda, n_bar, n_qubits);
  c.x = c.gamma_n * c.tau_star;
  c.ratio = c.tau_star / c.tau_qsl;
  return c;
}

std::optional<CollapsePoint> make_collapse_point(const Trajectory& traj, double eps_target) {
  const auto passage = first_passage(traj, eps_target);
  if (!passage) return std::nullopt;
  const auto& p = traj.params;
  return make_collapse_point(p.n_qubits, p.lambda, p.n_bar, eps_target, *passage);
}

}  // namespace dicke

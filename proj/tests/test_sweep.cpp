#include "doctest.h"

#include <cmath>
#include <sstream>
#include <tuple>

#include "dicke/errors.hpp"
#include "dicke/io.hpp"
#include "dicke/sweep.hpp"

using namespace dicke;

namespace {

SweepConfig small_config() {
  SweepConfig c;
  c.n_qubits_list = {2, 3};
  c.lambda_grid = {0.5, 1.0, 2.0};
  c.n_bar_grid = {2.0, 5.0};
  c.eps_grid = SweepConfig::linspace(0.05, 0.95, 10);
  c.t_max = 10.0;
  c.n_points = 500;
  c.n_fock = 30;
  c.envelope_bins = 10;
  return c;
}

std::string serialize(const SweepResult& r) {
  std::ostringstream os;
  io::write_points_csv(os, r.points);
  io::write_summary_csv(os, r);
  io::write_envelope_csv(os, r);
  io::write_fit_csv(os, r);
  return os.str();
}

CollapsePoint point(int n, double eps, double x) {
  CollapsePoint c;
  c.n_qubits = n;
  c.eps = eps;
  c.x = x;
  c.ratio = x / std::sqrt(eps);
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(SweepConfig{}.validate());
  SweepConfig c;
  c.eps_grid.clear();
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SweepConfig{};
  c.lambda_grid = {0.5, 0.2};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SweepConfig{};
  c.n_fock = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SweepConfig{};
  c.eps_grid = {0.5, 1.2};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SweepConfig{};
  c.n_qubits_list = {1, 2};
  CHECK_THROWS_AS(run_sweep(c), ConfigError);

  const auto g = SweepConfig::linspace(0.02, 0.96, 50);
  CHECK(g.size() == 50);
  CHECK(g.front() == 0.02);
  CHECK(g.back() == 0.96);
  CHECK(SweepConfig{}.lambda_grid.size() == 8);
  CHECK(SweepConfig{}.n_bar_grid.size() == 7);
}

TEST_CASE("small sweep: determinism, ordering and invariants") {
  const SweepConfig cfg = small_config();
  const SweepResult serial = run_sweep(cfg, 1);
  const SweepResult parallel = run_sweep(cfg, 3);
  const SweepResult again = run_sweep(cfg, 1);
  CHECK(serialize(serial) == serialize(parallel));
  CHECK(serialize(serial) == serialize(again));

  CHECK(serial.failures.empty());
  CHECK(serial.trajectories.size() == 12);
  CHECK(serial.violation_count == 0);
  for (std::size_t i = 1; i < serial.points.size(); ++i) {
    const auto& a = serial.points[i - 1];
    const auto& b = serial.points[i];
    const auto ka = std::tie(a.n_qubits, a.lambda, a.n_bar, a.eps);
    const auto kb = std::tie(b.n_qubits, b.lambda, b.n_bar, b.eps);
    CHECK(ka < kb);
  }
  for (const auto& t : serial.trajectories) {
    CHECK(t.max_bound_excess <= 1e-9);
    CHECK(t.diagnostics.max_norm_error < 1e-9);
  }
  for (const auto& s : serial.summaries) {
    CHECK(s.valid_count <= s.candidate_count);
    CHECK(s.min_ratio >= 1.0);
    CHECK(s.median_ratio >= s.min_ratio);
  }
  for (const auto& c : serial.points) CHECK(c.x >= std::sqrt(c.eps) - 1e-9);
}

TEST_CASE("per-point failures are collected without aborting") {
  SweepConfig cfg = small_config();
  cfg.n_bar_grid = {2.0, 25.0};  // 25 photons do not fit in 30 Fock states
  const SweepResult r = run_sweep(cfg, 2);
  CHECK(r.failures.size() == 6);
  CHECK(r.trajectories.size() == 6);
  for (const auto& f : r.failures) {
    CHECK(f.n_bar == 25.0);
    CHECK(f.cause.find("n_fock") != std::string::npos);
  }
}

TEST_CASE("statistics helpers") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK_THROWS_AS(median({}), DomainError);

  std::vector<CollapsePoint> pts = {point(2, 0.25, 0.6), point(2, 0.25, 0.55), point(2, 0.81, 1.2),
                                    point(3, 0.25, 0.5)};
  CHECK(count_violations(pts) == 0);
  pts.push_back(point(2, 0.81, 0.8));
  CHECK(count_violations(pts) == 1);

  SweepConfig cfg;
  cfg.n_qubits_list = {2, 3};
  const auto stats = collapse_statistics(pts, cfg);
  REQUIRE(stats.size() == 2);
  CHECK(stats[0].valid_count == 4);
  CHECK(stats[0].violations == 1);
  CHECK(stats[0].min_ratio == doctest::Approx(0.8 / 0.9));
  CHECK(stats[1].valid_count == 1);
}

TEST_CASE("lower envelope") {
  const auto eps = SweepConfig::linspace(0.02, 0.96, 50);
  std::vector<CollapsePoint> pts;
  for (double e : eps) {
    pts.push_back(point(2, e, 1.3 * std::sqrt(e)));
    pts.push_back(point(2, e, 1.1 * std::sqrt(e)));
  }
  const auto bins = lower_envelope(pts, 50);
  REQUIRE(bins.size() == 50);
  for (std::size_t b = 0; b < bins.size(); ++b) {
    CHECK(bins[b].center == doctest::Approx(eps[b]));
    REQUIRE(bins[b].x_min.has_value());
    CHECK(*bins[b].x_min == doctest::Approx(1.1 * std::sqrt(eps[b])));
    CHECK(*bins[b].x_min >= std::sqrt(bins[b].left));
  }
  const auto coarse = lower_envelope({point(2, 0.5, 0.9)}, 5);
  int filled = 0;
  for (const auto& b : coarse) filled += b.x_min.has_value();
  CHECK(filled == 1);
  CHECK_THROWS_AS(lower_envelope({}, 5), DomainError);
}

TEST_CASE("linear fits") {
  std::vector<CollapsePoint> pts;
  for (int k = 1; k <= 12; ++k) {
    CollapsePoint c = point(2, 0.5, 0.0);
    c.gamma_n = 0.3 * k;
    c.tau_star = std::sqrt(0.5) / c.gamma_n;
    pts.push_back(c);
    CollapsePoint off = c;
    off.eps = 0.3;
    off.tau_star = 99.0;
    pts.push_back(off);
  }
  const TauFit f = fit_tau_vs_inverse_gamma(pts, 2, 0.5);
  CHECK(f.eps == 0.5);
  CHECK(f.fit.n == 12);
  CHECK(std::abs(f.fit.slope - std::sqrt(0.5)) < 1e-6);
  CHECK(std::abs(f.fit.intercept) < 1e-9);
  CHECK_THROWS_AS(fit_tau_vs_inverse_gamma(pts, 3), DomainError);
  CHECK_THROWS_AS(fit_line({1.0}, {2.0}), DomainError);
  CHECK_THROWS_AS(fit_line({1.0, 1.0}, {2.0, 3.0}), DomainError);
}

TEST_CASE("table1 rows") {
  const auto rows = table1_rows({2}, 40, TimeGrid::paper_default());
  REQUIRE(rows.size() == 12);
  CHECK(rows[0].t_probe == doctest::Approx(4 * 45.0 / 1999.0));
  CHECK(rows[0].a_num == doctest::Approx(1.9930).epsilon(5e-3));
  for (const auto& r : rows) {
    CHECK(r.a_th == 2.0);
    CHECK(r.err_percent == doctest::Approx(100.0 * std::abs(r.a_num - 2.0) / 2.0));
  }
}

// Command-line driver: charging trajectories, Table I coefficients, the full
// collapse sweep and the headless acceptance check.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "dicke/acceptance.hpp"
#include "dicke/errors.hpp"
#include "dicke/io.hpp"

namespace fs = std::filesystem;
using namespace dicke;

namespace {

enum ExitCode { kOk = 0, kAcceptanceFailure = 1, kConfigError = 2, kNumericalFailure = 3 };

struct GlobalOptions {
  fs::path out_dir = ".";
  std::optional<int> n_fock;
  std::optional<double> t_max;
  std::optional<int> n_points;
};

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path.string());
  return os;
}

void apply_globals(const GlobalOptions& g, SweepConfig& c) {
  if (g.n_fock) c.n_fock = *g.n_fock;
  if (g.t_max) c.t_max = *g.t_max;
  if (g.n_points) c.n_points = *g.n_points;
  c.validate();
}

int run_trajectory(const GlobalOptions& g, const DickeParams& params) {
  DickeParams p = params;
  SweepConfig defaults;
  apply_globals(g, defaults);
  p.n_fock = defaults.n_fock;
  p.validate();
  const Trajectory traj = compute_trajectory(p, defaults.grid());

  fs::create_directories(g.out_dir);
  const fs::path path = g.out_dir / "trajectory.csv";
  auto os = open_output(path);
  io::write_trajectory_csv(os, traj);

  io::RunManifest manifest("trajectory");
  manifest.set("n_qubits", std::to_string(p.n_qubits));
  manifest.set("lambda", io::format_double(p.lambda, 17));
  manifest.set("n_bar", io::format_double(p.n_bar, 17));
  manifest.set("n_fock", std::to_string(p.n_fock));
  manifest.set("t_max", io::format_double(defaults.t_max, 17));
  manifest.set("n_points", std::to_string(defaults.n_points));
  manifest.set("eps_max", io::format_double(traj.eps_max));
  manifest.set("truncation_tail", io::format_double(traj.diagnostics.truncation_tail, 6));
  manifest.add_output("trajectory", path);
  auto ms = open_output(g.out_dir / "manifest.txt");
  manifest.write(ms);
  std::cout << path.string() << '\n';
  return kOk;
}

int run_table1(const GlobalOptions& g, const std::vector<int>& n_qubits) {
  SweepConfig defaults;
  apply_globals(g, defaults);
  const auto rows = table1_rows(n_qubits, defaults.n_fock, defaults.grid());

  fs::create_directories(g.out_dir);
  const fs::path path = g.out_dir / "table1.csv";
  auto os = open_output(path);
  io::write_table1_csv(os, rows);

  io::RunManifest manifest("table1");
  manifest.set("n_fock", std::to_string(defaults.n_fock));
  manifest.set("t_probe", io::format_double(rows.empty() ? 0.0 : rows.front().t_probe, 17));
  manifest.add_output("table1", path);
  auto ms = open_output(g.out_dir / "manifest.txt");
  manifest.write(ms);
  std::cout << path.string() << '\n';
  return kOk;
}

int run_sweep_cmd(const GlobalOptions& g, const std::optional<fs::path>& config_path, unsigned workers) {
  SweepConfig config = config_path ? io::load_sweep_config(*config_path) : SweepConfig{};
  apply_globals(g, config);
  const SweepResult result = run_sweep(config, workers);

  fs::create_directories(g.out_dir);
  io::RunManifest manifest("sweep");
  manifest.set("workers", std::to_string(workers));

  auto emit = [&](const std::string& role, const std::string& name, auto&& writer) {
    const fs::path path = g.out_dir / name;
    auto os = open_output(path);
    writer(os);
    manifest.add_output(role, path);
  };
  emit("config_snapshot", "config_snapshot.ini", [&](std::ostream& os) { io::write_sweep_config(os, config); });
  emit("points", "points.csv", [&](std::ostream& os) { io::write_points_csv(os, result.points); });
  emit("summary", "summary.csv", [&](std::ostream& os) { io::write_summary_csv(os, result); });
  emit("envelope", "envelope.csv", [&](std::ostream& os) { io::write_envelope_csv(os, result); });
  emit("fit", "fit.csv", [&](std::ostream& os) { io::write_fit_csv(os, result); });

  double tail = 0.0, norm = 0.0, energy = 0.0;
  for (const auto& t : result.trajectories) {
    tail = std::max(tail, t.diagnostics.truncation_tail);
    norm = std::max(norm, t.diagnostics.max_norm_error);
    energy = std::max(energy, t.diagnostics.max_energy_drift);
  }
  manifest.set("trajectories", std::to_string(result.trajectories.size()));
  manifest.set("valid_points", std::to_string(result.points.size()));
  manifest.set("violations", std::to_string(result.violation_count));
  manifest.set("max_truncation_tail", io::format_double(tail, 6));
  manifest.set("max_norm_drift", io::format_double(norm, 6));
  manifest.set("max_energy_drift", io::format_double(energy, 6));
  manifest.set("failures", std::to_string(result.failures.size()));
  for (std::size_t i = 0; i < result.failures.size(); ++i) {
    const auto& f = result.failures[i];
    manifest.set("failure." + std::to_string(i), "N=" + std::to_string(f.n_qubits) + " lambda=" +
                                                     io::format_double(f.lambda) + " n_bar=" +
                                                     io::format_double(f.n_bar) + " cause=" + f.cause);
  }
  auto ms = open_output(g.out_dir / "manifest.txt");
  manifest.write(ms);

  for (const auto& s : result.summaries) {
    std::cout << "N=" << s.n_qubits << " valid=" << s.valid_count << " min_ratio=" << io::format_double(s.min_ratio, 5)
              << " median_ratio=" << io::format_double(s.median_ratio, 5) << " violations=" << s.violations << '\n';
  }
  return result.failures.empty() ? kOk : kNumericalFailure;
}

int run_check(const GlobalOptions& g, const std::optional<fs::path>& config_path, unsigned workers) {
  acceptance::Options opts;
  if (config_path) opts.config = io::load_sweep_config(*config_path);
  apply_globals(g, opts.config);
  opts.workers = workers;
  const auto results = acceptance::run_all(opts, std::cout);
  int failed = 0;
  for (const auto& r : results) failed += !r.passed;
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  for (const auto& r : results) {
    if (!r.passed) std::cout << "failed: " << r.name << '\n';
  }
  return failed == 0 ? kOk : kAcceptanceFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dicke quantum battery: ergotropy charging and speed-limit checks"};
  app.require_subcommand(1);

  GlobalOptions g;
  std::string out_dir = ".";
  int n_fock = 0;
  double t_max = 0.0;
  int n_points = 0;
  auto* o_fock = app.add_option("--n-fock", n_fock, "Fock-space cutoff");
  auto* o_tmax = app.add_option("--t-max", t_max, "Time window end (1/omega0)");
  auto* o_npts = app.add_option("--n-points", n_points, "Number of time samples");
  app.add_option("--out-dir", out_dir, "Output directory");
  app.fallthrough();

  DickeParams traj;
  auto* cmd_traj = app.add_subcommand("trajectory", "Normalised ergotropy eps(t) for one protocol");
  cmd_traj->add_option("--n-qubits", traj.n_qubits)->required();
  cmd_traj->add_option("--lambda", traj.lambda)->required();
  cmd_traj->add_option("--n-bar", traj.n_bar)->required();
  cmd_traj->add_option("--omega-c", traj.omega_c, "Cavity frequency (1 = resonance)");

  std::vector<int> table_n{2, 3, 4, 5};
  auto* cmd_table = app.add_subcommand("table1", "Short-time coefficient A_num per (N, lambda, n_bar)");
  cmd_table->add_option("--n-qubits", table_n, "Subset of N values");

  std::string config_path;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  auto* cmd_sweep = app.add_subcommand("sweep", "Full collapse sweep");
  cmd_sweep->add_option("--config", config_path, "INI config file");
  cmd_sweep->add_option("--workers", workers, "Worker threads");

  auto* cmd_check = app.add_subcommand("check", "Run every acceptance criterion");
  cmd_check->add_option("--config", config_path, "INI config file");
  cmd_check->add_option("--workers", workers, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  g.out_dir = out_dir;
  if (*o_fock) g.n_fock = n_fock;
  if (*o_tmax) g.t_max = t_max;
  if (*o_npts) g.n_points = n_points;
  const std::optional<fs::path> config =
      config_path.empty() ? std::nullopt : std::optional<fs::path>(config_path);

  try {
    if (*cmd_traj) return run_trajectory(g, traj);
    if (*cmd_table) return run_table1(g, table_n);
    if (*cmd_sweep) return run_sweep_cmd(g, config, workers);
    if (*cmd_check) return run_check(g, config, workers);
  } catch (const ConfigError& e) {
    std::cerr << "error: config: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    std::cerr << "error: domain: " << e.what() << '\n';
    return kConfigError;
  } catch (const TruncationError& e) {
    std::cerr << "error: truncation: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: numerical: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kOk;
}

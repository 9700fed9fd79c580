#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dicke/sweep.hpp"

namespace dicke::io {

// Locale-independent shortest-of-%g style formatting with `digits`
// significant digits.
std::string format_double(double value, int digits = 12);
double parse_double(const std::string& text);

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_points_csv(std::ostream& os, const std::vector<CollapsePoint>& points);
std::vector<CollapsePoint> read_points_csv(std::istream& is);
void write_summary_csv(std::ostream& os, const SweepResult& result);
void write_envelope_csv(std::ostream& os, const SweepResult& result);
void write_fit_csv(std::ostream& os, const SweepResult& result);
void write_table1_csv(std::ostream& os, const std::vector<Table1Row>& rows);

// INI-style config:
//   [model]  n_fock, omega0, omega_c
//   [grid]   t_max, n_points
//   [sweep]  n_qubits, lambda, n_bar (comma lists); eps as a list or
//            eps_min / eps_max / eps_count; envelope_bins
// Missing keys keep their defaults. Throws ConfigError.
SweepConfig parse_sweep_config(std::istream& is);
SweepConfig load_sweep_config(const std::filesystem::path& path);
// Round-trips exactly through parse_sweep_config (17 significant digits).
void write_sweep_config(std::ostream& os, const SweepConfig& config);

inline constexpr const char* kVersion = "1.0.0";

// Line-oriented key=value provenance record.
class RunManifest {
 public:
  explicit RunManifest(std::string command);

  void set(const std::string& key, const std::string& value);
  // Registers an output file; each path may be recorded once.
  void add_output(const std::string& role, const std::filesystem::path& path);
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  const std::vector<std::pair<std::string, std::filesystem::path>>& outputs() const { return outputs_; }

  void write(std::ostream& os) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::vector<std::pair<std::string, std::filesystem::path>> outputs_;
};

std::string utc_timestamp();

}  // namespace dicke::io

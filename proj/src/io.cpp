#include "dicke/io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "dicke/errors.hpp"

namespace dicke::io {

std::string format_double(double value, int digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  std::size_t b = text.find_first_not_of(" \t\r");
  std::size_t e = text.find_last_not_of(" \t\r");
  if (b == std::string::npos) throw ConfigError("empty numeric field");
  double v = 0.0;
  const char* first = text.data() + b;
  const char* last = text.data() + e + 1;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) throw ConfigError("malformed number '" + text + "'");
  return v;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

template <typename... Ts>
void csv_row(std::ostream& os, const Ts&... fields) {
  bool first = true;
  ((os << (first ? "" : ",") << fields, first = false), ...);
  os << '\n';
}

std::string fmt(double v) { return format_double(v); }

constexpr const char* kPointsHeader = "N,lambda,n_bar,eps,tau_star_interp,tau_star_grid,tau_qsl,gamma_n,x,ratio";

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const auto& p = traj.params;
  os << "t,eps,global_bound,classical_field_eps\n";
  for (int i = 0; i < traj.grid.size(); ++i) {
    const double t = traj.grid.at(i);
    csv_row(os, fmt(t), fmt(traj.eps[i]), fmt(global_bound(t, p.lambda, p.n_bar, p.n_qubits)),
            fmt(classical_field_eps(t, p.lambda, p.n_bar, p.n_qubits)));
  }
}

void write_points_csv(std::ostream& os, const std::vector<CollapsePoint>& points) {
  os << kPointsHeader << '\n';
  for (const auto& c : points) {
    csv_row(os, c.n_qubits, fmt(c.lambda), fmt(c.n_bar), fmt(c.eps), fmt(c.tau_star_interp), fmt(c.tau_star),
            fmt(c.tau_qsl), fmt(c.gamma_n), fmt(c.x), fmt(c.ratio));
  }
}

std::vector<CollapsePoint> read_points_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kPointsHeader) throw ConfigError("points CSV has an unexpected header");
  std::vector<CollapsePoint> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 10) throw ConfigError("points CSV row has " + std::to_string(f.size()) + " fields");
    CollapsePoint c;
    c.n_qubits = static_cast<int>(parse_double(f[0]));
    c.lambda = parse_double(f[1]);
    c.n_bar = parse_double(f[2]);
    c.eps = parse_double(f[3]);
    c.tau_star_interp = parse_double(f[4]);
    c.tau_star = parse_double(f[5]);
    c.tau_qsl = parse_double(f[6]);
    c.gamma_n = parse_double(f[7]);
    c.x = parse_double(f[8]);
    c.ratio = parse_double(f[9]);
    out.push_back(c);
  }
  return out;
}

void write_summary_csv(std::ostream& os, const SweepResult& result) {
  os << "N,valid_count,candidate_count,min_ratio,median_ratio,violations,min_ratio_interp,median_ratio_interp,"
        "failed_trajectories\n";
  for (const auto& s : result.summaries) {
    int failed = 0;
    for (const auto& f : result.failures) failed += f.n_qubits == s.n_qubits;
    csv_row(os, s.n_qubits, s.valid_count, s.candidate_count, fmt(s.min_ratio), fmt(s.median_ratio), s.violations,
            fmt(s.min_ratio_interp), fmt(s.median_ratio_interp), failed);
  }
}

void write_envelope_csv(std::ostream& os, const SweepResult& result) {
  os << "N,eps_center,eps_left,eps_right,x_min,sqrt_eps,x_min_over_sqrt_eps\n";
  const auto& cfg = result.config;
  for (int n : cfg.n_qubits_list) {
    std::vector<CollapsePoint> pts;
    for (const auto& c : result.points)
      if (c.n_qubits == n) pts.push_back(c);
    if (pts.empty()) continue;
    for (const auto& b : lower_envelope(pts, cfg.envelope_bins, cfg.eps_grid.front(), cfg.eps_grid.back())) {
      const double s = std::sqrt(b.center);
      if (b.x_min) {
        csv_row(os, n, fmt(b.center), fmt(b.left), fmt(b.right), fmt(*b.x_min), fmt(s), fmt(*b.x_min / s));
      } else {
        csv_row(os, n, fmt(b.center), fmt(b.left), fmt(b.right), "", fmt(s), "");
      }
    }
  }
}

void write_fit_csv(std::ostream& os, const SweepResult& result) {
  os << "N,eps,slope,intercept,n_points,qsl_slope\n";
  for (int n : result.config.n_qubits_list) {
    try {
      const TauFit f = fit_tau_vs_inverse_gamma(result.points, n);
      csv_row(os, n, fmt(f.eps), fmt(f.fit.slope), fmt(f.fit.intercept), f.fit.n, fmt(std::sqrt(f.eps)));
    } catch (const DomainError&) {
      // Not enough points at this N; the row is omitted.
    }
  }
}

void write_table1_csv(std::ostream& os, const std::vector<Table1Row>& rows) {
  os << "N,lambda,n_bar,t_probe,A_num,A_th,err_percent\n";
  for (const auto& r : rows) {
    csv_row(os, r.n_qubits, fmt(r.lambda), fmt(r.n_bar), fmt(r.t_probe), fmt(r.a_num), fmt(r.a_th),
            fmt(r.err_percent));
  }
}

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& f : split(text, ',')) out.push_back(parse_double(f));
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i], 17);
  return s;
}

int as_int(double v, const char* key) {
  if (v != std::floor(v)) throw ConfigError(std::string(key) + " must be an integer");
  return static_cast<int>(v);
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& is) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  static const std::vector<std::string> known = {
      "model.n_fock",   "model.omega0",     "model.omega_c",   "grid.t_max",      "grid.n_points",
      "sweep.n_qubits", "sweep.lambda",     "sweep.n_bar",     "sweep.eps",       "sweep.eps_min",
      "sweep.eps_max",  "sweep.eps_count",  "sweep.envelope_bins"};
  for (const auto& [section, body] : tree) {
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      if (std::find(known.begin(), known.end(), full) == known.end()) throw ConfigError("unknown config key " + full);
    }
  }

  SweepConfig c;
  auto num = [&](const char* key) -> std::optional<double> {
    if (auto v = tree.get_optional<std::string>(key)) return parse_double(*v);
    return std::nullopt;
  };
  auto list = [&](const char* key) -> std::optional<std::vector<double>> {
    if (auto v = tree.get_optional<std::string>(key)) return parse_list(*v);
    return std::nullopt;
  };

  if (auto v = num("model.n_fock")) c.n_fock = as_int(*v, "n_fock");
  if (auto v = num("model.omega0")) c.omega0 = *v;
  if (auto v = num("model.omega_c")) c.omega_c = *v;
  if (auto v = num("grid.t_max")) c.t_max = *v;
  if (auto v = num("grid.n_points")) c.n_points = as_int(*v, "n_points");
  if (auto v = list("sweep.n_qubits")) {
    c.n_qubits_list.clear();
    for (double x : *v) c.n_qubits_list.push_back(as_int(x, "n_qubits"));
  }
  if (auto v = list("sweep.lambda")) c.lambda_grid = *v;
  if (auto v = list("sweep.n_bar")) c.n_bar_grid = *v;
  if (auto v = tree.get_optional<std::string>("sweep.eps")) {
    c.eps_grid = v->find_first_not_of(" \t") == std::string::npos ? std::vector<double>{} : parse_list(*v);
  } else if (num("sweep.eps_min") || num("sweep.eps_max") || num("sweep.eps_count")) {
    c.eps_grid = SweepConfig::linspace(num("sweep.eps_min").value_or(0.02), num("sweep.eps_max").value_or(0.96),
                                       as_int(num("sweep.eps_count").value_or(50), "eps_count"));
  }
  if (auto v = num("sweep.envelope_bins")) c.envelope_bins = as_int(*v, "envelope_bins");
  c.validate();
  return c;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_sweep_config(in);
}

void write_sweep_config(std::ostream& os, const SweepConfig& c) {
  std::vector<double> nq(c.n_qubits_list.begin(), c.n_qubits_list.end());
  os << "[model]\n"
     << "n_fock = " << c.n_fock << '\n'
     << "omega0 = " << format_double(c.omega0, 17) << '\n'
     << "omega_c = " << format_double(c.omega_c, 17) << "\n\n"
     << "[grid]\n"
     << "t_max = " << format_double(c.t_max, 17) << '\n'
     << "n_points = " << c.n_points << "\n\n"
     << "[sweep]\n"
     << "n_qubits = " << join(nq) << '\n'
     << "lambda = " << join(c.lambda_grid) << '\n'
     << "n_bar = " << join(c.n_bar_grid) << '\n'
     << "eps = " << join(c.eps_grid) << '\n'
     << "envelope_bins = " << c.envelope_bins << '\n';
}

RunManifest::RunManifest(std::string command) {
  set("command", std::move(command));
  set("version", kVersion);
  set("timestamp", utc_timestamp());
}

void RunManifest::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void RunManifest::add_output(const std::string& role, const std::filesystem::path& path) {
  for (const auto& [r, p] : outputs_) {
    if (p == path) throw DomainError("output " + path.string() + " already registered as " + r);
  }
  outputs_.emplace_back(role, path);
}

void RunManifest::write(std::ostream& os) const {
  for (const auto& [k, v] : entries_) os << k << '=' << v << '\n';
  for (const auto& [r, p] : outputs_) os << "output." << r << '=' << p.string() << '\n';
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace dicke::io

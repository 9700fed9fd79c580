#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dicke/sweep.hpp"

namespace dicke::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

// Published Table I values (N = 2, 3, 4; rows lambda-major over n_bar).
struct PublishedA {
  int n_qubits;
  double lambda;
  double n_bar;
  double a_num;
};
const std::vector<PublishedA>& published_table1();

// Minimum of sum_k r_k e_{sigma(k)} over all permutations sigma.
double brute_force_passive_energy(const Eigen::VectorXd& populations, const Eigen::VectorXd& levels);

CriterionResult check_table1(const std::vector<Table1Row>& rows);
CriterionResult check_short_time_law(int n_fock);
CriterionResult check_global_bound(const SweepResult& result);
CriterionResult check_qsl_violations(const SweepResult& result);
CriterionResult check_table2(const SweepResult& result);
CriterionResult check_envelope(const SweepResult& result);
CriterionResult check_tau_fit(const SweepResult& result);
CriterionResult check_classical_field(int n_fock);
CriterionResult check_ergotropy_oracle(std::uint64_t seed = 20240501, int samples = 1000);
CriterionResult check_dynamics_invariants(const SweepResult& serial, const SweepResult& parallel);

struct Options {
  unsigned workers = 2;
  SweepConfig config;  // the default sweep unless overridden
};

// Runs every criterion, streaming one line per criterion to `log`.
std::vector<CriterionResult> run_all(const Options& options, std::ostream& log);

std::string format_line(const CriterionResult& r);

}  // namespace dicke::acceptance

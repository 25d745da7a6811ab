#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vnd/quadrature.hpp"
#include "vnd/report.hpp"

namespace vnd {

// Flags shared by the verify and experiment front ends.  Negative or empty
// values select the per-suite defaults.
struct RunFlags {
  std::vector<double> s;
  GridOptions grid;
  double tol = -1.0;
  std::uint64_t seed = 1;
  int samples = -1;
  bool identity_only = false;
  int n = 2;
  std::string group = "Z2_pauli";
  bool product_state = false;

  std::string canonical() const;
};

struct SuiteReport {
  Table table;
  int hard_failures = 0;
  int soft_failures = 0;
  bool passed() const { return hard_failures == 0; }
};

std::vector<std::string> verify_suites();
std::vector<std::string> experiment_names();

// Throws ProblemError for unknown names.
SuiteReport run_verify_suite(const std::string& suite, const RunFlags& flags);
Table run_experiment(const std::string& name, const RunFlags& flags);

}  // namespace vnd

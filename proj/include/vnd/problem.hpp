#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "vnd/channels.hpp"
#include "vnd/errors.hpp"
#include "vnd/inclusions.hpp"

namespace vnd {

// Malformed problem file or unresolved name.
class ProblemError : public Error {
 public:
  using Error::Error;
};

struct TaskRecord {
  std::string name;
  std::string op;
  std::vector<std::string> args;
  nlohmann::json params = nlohmann::json::object();
};

struct ScenarioRecord {
  Index n = 0;
  std::string group_name;
  std::vector<ComplexMatrix> rep;
  ComplexVector psi;

  InclusionScenario build() const { return build_orbifold_inclusion(n, rep, psi, group_name); }
};

// JSON problem description, format tag "vnd-1".  Complex numbers are
// [re, im] pairs (plain numbers are read as real), matrices row-major
// nested arrays.
struct ProblemFile {
  std::string version;
  std::map<std::string, State> states;
  std::map<std::string, MatrixAlgebra> algebras;
  std::map<std::string, Channel> channels;
  std::map<std::string, ScenarioRecord> scenarios;
  std::vector<TaskRecord> tasks;

  static ProblemFile parse(const std::string& text);
  static ProblemFile load(const std::string& path);
  const TaskRecord& task(const std::string& name) const;
};

struct TaskDefaults {
  GridOptions grid;
  std::vector<double> s;
};

struct TaskResult {
  std::string task;
  std::string op;
  std::string inputs;
  DivergenceResult result;
};

TaskResult run_task(const ProblemFile& pf, const TaskRecord& task, const TaskDefaults& defaults = {});
std::vector<std::string> task_operations();

ComplexMatrix parse_matrix(const nlohmann::json& j);
ComplexVector parse_vector(const nlohmann::json& j);

}  // namespace vnd

#include "vnd/problem.hpp"

#include <fstream>
#include <sstream>

namespace vnd {

namespace {

using nlohmann::json;

enum class ArgKind { State, Algebra, Channel, Scenario };

struct OpSignature {
  std::vector<ArgKind> args;
};

const std::map<std::string, OpSignature>& signatures() {
  using A = ArgKind;
  static const std::map<std::string, OpSignature> table = {
      {"relative_entropy", {{A::State, A::State}}},
      {"fidelity", {{A::State, A::State}}},
      {"sandwiched_renyi", {{A::State, A::State}}},
      {"generalized_fidelity", {{A::State, A::State}}},
      {"kosaki_entropy", {{A::State, A::State}}},
      {"lp_norm_oracle", {{A::State, A::State}}},
      {"trace_expectation_index", {{A::Algebra, A::Algebra}}},
      {"channel_dpi", {{A::Channel, A::State, A::State}}},
      {"scenario_index", {{A::Scenario}}},
      {"certainty_relation", {{A::Scenario}}},
      {"renyi_certainty", {{A::Scenario}}},
      {"fidelity_certainty", {{A::Scenario}}},
      {"phi_index_bound", {{A::Scenario}}},
  };
  return table;
}

cplx parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ProblemError("expected a complex number [re, im], got " + j.dump());
}

std::vector<ComplexMatrix> parse_matrix_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw ProblemError(what + ": expected a list of matrices");
  std::vector<ComplexMatrix> out;
  for (const auto& m : j) out.push_back(parse_matrix(m));
  return out;
}

State parse_state(const json& j, const std::string& name) {
  try {
    if (j.is_array()) return State(parse_matrix(j));
    if (!j.is_object()) throw ProblemError("state '" + name + "': expected matrix or object");
    if (j.contains("density")) return State(parse_matrix(j.at("density")));
    if (j.contains("vector")) return State::from_vector(parse_vector(j.at("vector")));
    if (j.contains("diagonal")) {
      ComplexVector d = parse_vector(j.at("diagonal"));
      return State(HermitianMatrix(ComplexMatrix(d.asDiagonal())));
    }
  } catch (const ProblemError&) {
    throw;
  } catch (const Error& e) {
    throw ProblemError("state '" + name + "': " + e.what());
  }
  throw ProblemError("state '" + name + "': expected one of density, vector, diagonal");
}

MatrixAlgebra parse_algebra(const json& j, const std::string& name) {
  if (!j.is_object() || !j.contains("ambient_dim")) throw ProblemError("algebra '" + name + "': missing ambient_dim");
  Index d = j.at("ambient_dim").get<Index>();
  if (d <= 0) throw ProblemError("algebra '" + name + "': ambient_dim must be positive");
  std::vector<ComplexMatrix> gens;
  if (j.contains("generators")) gens = parse_matrix_list(j.at("generators"), "algebra '" + name + "'");
  try {
    return close_star_algebra(gens, d);
  } catch (const Error& e) {
    throw ProblemError("algebra '" + name + "': " + e.what());
  }
}

Channel parse_channel(const json& j, const std::string& name) {
  if (!j.is_object()) throw ProblemError("channel '" + name + "': expected object");
  try {
    if (j.contains("kraus")) return Channel(parse_matrix_list(j.at("kraus"), "channel '" + name + "'"));
    if (j.contains("name")) {
      std::string kind = j.at("name").get<std::string>();
      Index d = j.at("dim").get<Index>();
      if (kind == "identity") return Channel::identity(d);
      if (kind == "pinching") return Channel::pinching(d);
      if (kind == "depolarizing") return Channel::completely_depolarizing(d);
      throw ProblemError("channel '" + name + "': unknown named channel '" + kind + "'");
    }
  } catch (const ProblemError&) {
    throw;
  } catch (const Error& e) {
    throw ProblemError("channel '" + name + "': " + e.what());
  }
  throw ProblemError("channel '" + name + "': expected kraus list or name");
}

ScenarioRecord parse_scenario(const json& j, const std::string& name) {
  if (!j.is_object() || !j.contains("n") || !j.contains("group") || !j.contains("state"))
    throw ProblemError("scenario '" + name + "': expected n, group, state");
  ScenarioRecord r;
  r.n = j.at("n").get<Index>();
  const json& g = j.at("group");
  try {
    if (g.is_string()) {
      r.group_name = g.get<std::string>();
      r.rep = named_group(r.group_name, r.n);
    } else {
      r.group_name = "custom";
      r.rep = parse_matrix_list(g, "scenario '" + name + "'");
    }
  } catch (const ProblemError&) {
    throw;
  } catch (const Error& e) {
    throw ProblemError("scenario '" + name + "': " + e.what());
  }
  r.psi = parse_vector(j.at("state"));
  if (r.psi.size() != r.n * r.n) throw ProblemError("scenario '" + name + "': state must have length n^2");
  return r;
}

double param(const TaskRecord& t, const std::string& key, double fallback) {
  if (!t.params.contains(key)) return fallback;
  const json& v = t.params.at(key);
  if (!v.is_number()) throw ProblemError("task '" + t.name + "': parameter '" + key + "' must be a number");
  return v.get<double>();
}

double order(const TaskRecord& t, const TaskDefaults& d) {
  if (t.params.contains("s")) return param(t, "s", 0.0);
  if (!d.s.empty()) return d.s.front();
  throw ProblemError("task '" + t.name + "': missing order parameter s");
}

GridOptions grid_of(const TaskRecord& t, const TaskDefaults& d) {
  GridOptions g = d.grid;
  g.t_min = param(t, "t_min", g.t_min);
  g.t_max = param(t, "t_max", g.t_max);
  g.n_points = static_cast<int>(param(t, "grid_points", g.n_points));
  return g;
}

}  // namespace

ComplexMatrix parse_matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw ProblemError("expected a non-empty matrix (array of rows)");
  Index rows = static_cast<Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) throw ProblemError("matrix rows must be non-empty arrays");
  Index cols = static_cast<Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) throw ProblemError("matrix rows have different lengths");
    for (Index c = 0; c < cols; ++c) m(r, c) = parse_complex(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

ComplexVector parse_vector(const json& j) {
  if (!j.is_array() || j.empty()) throw ProblemError("expected a non-empty vector");
  ComplexVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = parse_complex(j[i]);
  return v;
}

ProblemFile ProblemFile::parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ProblemError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ProblemError("problem file must be a JSON object");
  ProblemFile pf;
  try {
    pf.version = j.value("version", "");
    if (pf.version != "vnd-1") throw ProblemError("unrecognized version tag '" + pf.version + "' (expected vnd-1)");
    if (j.contains("states"))
      for (const auto& [k, v] : j.at("states").items()) pf.states.emplace(k, parse_state(v, k));
    if (j.contains("algebras"))
      for (const auto& [k, v] : j.at("algebras").items()) pf.algebras.emplace(k, parse_algebra(v, k));
    if (j.contains("channels"))
      for (const auto& [k, v] : j.at("channels").items()) pf.channels.emplace(k, parse_channel(v, k));
    if (j.contains("scenarios"))
      for (const auto& [k, v] : j.at("scenarios").items()) pf.scenarios.emplace(k, parse_scenario(v, k));
    if (j.contains("tasks")) {
      if (!j.at("tasks").is_array()) throw ProblemError("tasks must be a list");
      std::size_t idx = 0;
      for (const auto& t : j.at("tasks")) {
        TaskRecord rec;
        rec.op = t.at("op").get<std::string>();
        rec.name = t.value("name", rec.op + "_" + std::to_string(idx));
        if (t.contains("args")) rec.args = t.at("args").get<std::vector<std::string>>();
        if (t.contains("params")) rec.params = t.at("params");
        pf.tasks.push_back(rec);
        ++idx;
      }
    }
  } catch (const json::exception& e) {
    throw ProblemError(std::string("malformed problem file: ") + e.what());
  }
  for (const auto& t : pf.tasks) {
    auto sig = signatures().find(t.op);
    if (sig == signatures().end()) throw ProblemError("task '" + t.name + "': unknown operation '" + t.op + "'");
    if (t.args.size() != sig->second.args.size()) {
      std::ostringstream os;
      os << "task '" << t.name << "': operation " << t.op << " takes " << sig->second.args.size() << " arguments";
      throw ProblemError(os.str());
    }
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      const std::string& a = t.args[i];
      bool ok = false;
      switch (sig->second.args[i]) {
        case ArgKind::State: ok = pf.states.count(a) > 0; break;
        case ArgKind::Algebra: ok = pf.algebras.count(a) > 0; break;
        case ArgKind::Channel: ok = pf.channels.count(a) > 0; break;
        case ArgKind::Scenario: ok = pf.scenarios.count(a) > 0; break;
      }
      if (!ok) throw ProblemError("task '" + t.name + "': unresolved name '" + a + "'");
    }
  }
  return pf;
}

ProblemFile ProblemFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProblemError("cannot open problem file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const TaskRecord& ProblemFile::task(const std::string& name) const {
  for (const auto& t : tasks)
    if (t.name == name) return t;
  throw ProblemError("unresolved task name '" + name + "'");
}

std::vector<std::string> task_operations() {
  std::vector<std::string> out;
  for (const auto& [k, v] : signatures()) out.push_back(k);
  return out;
}

TaskResult run_task(const ProblemFile& pf, const TaskRecord& t, const TaskDefaults& defaults) {
  TaskResult out;
  out.task = t.name;
  out.op = t.op;
  for (std::size_t i = 0; i < t.args.size(); ++i) out.inputs += (i ? ";" : "") + t.args[i];
  const std::string& op = t.op;
  auto st = [&](std::size_t i) -> const State& { return pf.states.at(t.args[i]); };
  DivergenceResult& r = out.result;
  if (op == "relative_entropy") {
    r = relative_entropy(st(0), st(1));
  } else if (op == "fidelity") {
    r = fidelity(st(0), st(1));
  } else if (op == "sandwiched_renyi") {
    r = sandwiched_renyi(st(0), st(1), order(t, defaults));
  } else if (op == "generalized_fidelity") {
    r = generalized_fidelity(st(0), st(1), order(t, defaults), grid_of(t, defaults));
  } else if (op == "kosaki_entropy") {
    r = kosaki_entropy(st(0), st(1), grid_of(t, defaults));
  } else if (op == "lp_norm_oracle") {
    double p = t.params.contains("p") ? param(t, "p", 0.0) : 2.0 * order(t, defaults);
    r = DivergenceResult::exact(lp_norm_oracle(st(0), st(1), p));
    r.diagnostics["p"] = p;
  } else if (op == "trace_expectation_index") {
    ConditionalExpectation e = trace_conditional_expectation(pf.algebras.at(t.args[0]), pf.algebras.at(t.args[1]));
    IndexResult idx = pimsner_popa_index(e);
    r = DivergenceResult::exact(idx.index);
    r.diagnostics["min_eig_at_index"] = idx.min_eig_at_index;
    r.diagnostics["min_eig_below"] = idx.min_eig_below;
    r.diagnostics["sampler_min_residual"] = idx.sampler_min_residual;
    r.diagnostics["cp_constant_assumed"] = 1.0;
  } else if (op == "channel_dpi") {
    if (!t.params.contains("divergence") || !t.params.at("divergence").is_string())
      throw ProblemError("task '" + t.name + "': channel_dpi needs a divergence parameter");
    DivergenceSpec spec = DivergenceSpec::parse(t.params.at("divergence").get<std::string>());
    const Channel& ch = pf.channels.at(t.args[0]);
    double pre = evaluate_divergence(spec, st(1), st(2), grid_of(t, defaults));
    double post = evaluate_divergence(spec, apply_schrodinger(ch, st(1)), apply_schrodinger(ch, st(2)),
                                      grid_of(t, defaults));
    r = DivergenceResult::exact(post);
    r.diagnostics["pre"] = pre;
    r.diagnostics["violation"] = spec.increasing() ? pre - post : post - pre;
  } else {
    InclusionScenario scn = pf.scenarios.at(t.args[0]).build();
    if (op == "scenario_index") {
      r = DivergenceResult::exact(scn.index.index);
      r.diagnostics["min_eig_below"] = scn.index.min_eig_below;
      r.diagnostics["sampler_min_residual"] = scn.index.sampler_min_residual;
    } else if (op == "certainty_relation" || op == "renyi_certainty") {
      CertaintyResult c = op == "certainty_relation" ? certainty_relation(scn) : renyi_certainty(scn, order(t, defaults));
      r = DivergenceResult::exact(c.sum);
      r.upper = c.log_index;
      r.diagnostics["s_M"] = c.s_M;
      r.diagnostics["s_N_prime"] = c.s_N_prime;
      r.diagnostics["log_index"] = c.log_index;
    } else if (op == "fidelity_certainty") {
      FidelityCertaintyResult f = fidelity_certainty(scn);
      r = DivergenceResult::exact(f.product);
      r.lower = f.bound;
      r.diagnostics["f_M"] = f.f_M;
      r.diagnostics["f_N_prime"] = f.f_N_prime;
      r.diagnostics["bound"] = f.bound;
    } else if (op == "phi_index_bound") {
      PhiIndexBound b = phi_index_bound(scn, order(t, defaults), grid_of(t, defaults));
      r = DivergenceResult{b.lower, b.lower, b.upper, b.detail.diagnostics};
      r.diagnostics["log_index"] = b.log_index;
    }
  }
  return out;
}

}  // namespace vnd

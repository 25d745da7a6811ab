#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "vnd/problem.hpp"
#include "vnd/report.hpp"
#include "vnd/suites.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

std::string diagnostics_field(const vnd::DivergenceResult& r) {
  std::string out;
  for (const auto& [key, value] : r.diagnostics) {
    if (!out.empty()) out += ';';
    out += key + '=' + vnd::format_double(value);
  }
  return out;
}

int emit(vnd::Table table, const vnd::RunFlags& flags, const std::string& out_path) {
  table.stamp(VND_VERSION, flags.canonical());
  if (out_path.empty()) {
    table.write_csv(std::cout);
    return kExitOk;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) {
    std::cerr << "vnd: cannot write " << out_path << "\n";
    return kExitInput;
  }
  table.write_csv(os);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Divergences, variational formulas and index bounds for finite-dimensional algebras", "vnd"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(VND_VERSION));

  vnd::RunFlags flags;
  std::string out_path;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--s", flags.s, "Order s (repeatable)")->take_all()->allow_extra_args(false);
    sub->add_option("--t-min", flags.grid.t_min, "Lower quadrature cutoff")->capture_default_str();
    sub->add_option("--t-max", flags.grid.t_max, "Upper quadrature cutoff")->capture_default_str();
    sub->add_option("--grid-points", flags.grid.n_points, "Quadrature nodes")->capture_default_str();
    sub->add_option("--tol", flags.tol, "Hard tolerance override");
    sub->add_option("--seed", flags.seed, "Base seed")->capture_default_str();
    sub->add_option("--samples", flags.samples, "Number of random samples");
    sub->add_option("--out", out_path, "CSV output path (default standard output)");
  };

  std::string file, task;
  CLI::App* compute = app.add_subcommand("compute", "Run tasks from a problem file");
  compute->add_option("--file", file, "Problem file (JSON)")->required();
  compute->add_option("--task", task, "Task name (default: all tasks)");
  common(compute);

  std::string suite;
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite, "dpi|certainty|phi_bounds|kosaki_vs_umegaki|quadrature_selftest")->required();
  verify->add_flag("--identity-only", flags.identity_only, "Use only identity channels in the dpi suite");
  common(verify);

  std::string experiment;
  CLI::App* exp = app.add_subcommand("experiment", "Run a named experiment");
  exp->add_option("--name", experiment, "bell_orbifold|diagonal_closed_form|certainty_sweep")->required();
  exp->add_option("--n", flags.n, "Site dimension")->capture_default_str();
  exp->add_option("--group", flags.group, "Group name")->capture_default_str();
  exp->add_flag("--product", flags.product_state, "Use a product state instead of the Bell state");
  common(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (compute->parsed()) {
      vnd::ProblemFile pf = vnd::ProblemFile::load(file);
      std::vector<const vnd::TaskRecord*> todo;
      if (task.empty()) {
        for (const auto& t : pf.tasks) todo.push_back(&t);
      } else {
        todo.push_back(&pf.task(task));
      }
      vnd::TaskDefaults defaults;
      defaults.grid = flags.grid;
      defaults.s = flags.s;
      vnd::Table table;
      table.columns = {"task", "inputs", "value", "lower", "upper", "diagnostics"};
      int status = kExitOk;
      for (const vnd::TaskRecord* t : todo) {
        try {
          vnd::TaskResult r = vnd::run_task(pf, *t, defaults);
          table.add({r.task, r.inputs, vnd::format_double(r.result.value), vnd::format_double(r.result.lower),
                     vnd::format_double(r.result.upper), diagnostics_field(r.result)});
        } catch (const vnd::ProblemError&) {
          throw;
        } catch (const vnd::Error& e) {
          std::string inputs;
          for (std::size_t i = 0; i < t->args.size(); ++i) inputs += (i ? ";" : "") + t->args[i];
          table.add({t->name, inputs, "nan", "nan", "nan", std::string("error=") + e.what()});
          std::cerr << "vnd: task '" << t->name << "' failed: " << e.what() << "\n";
          status = kExitNumeric;
        }
      }
      int w = emit(std::move(table), flags, out_path);
      return status != kExitOk ? status : w;
    }
    if (verify->parsed()) {
      vnd::SuiteReport rep = vnd::run_verify_suite(suite, flags);
      int w = emit(std::move(rep.table), flags, out_path);
      std::cerr << "vnd verify " << suite << ": " << (rep.passed() ? "pass" : "FAIL") << " (hard failures "
                << rep.hard_failures << ", soft failures " << rep.soft_failures << ")\n";
      if (w != kExitOk) return w;
      return rep.passed() ? kExitOk : kExitFailed;
    }
    return emit(vnd::run_experiment(experiment, flags), flags, out_path);
  } catch (const vnd::ProblemError& e) {
    std::cerr << "vnd: " << e.what() << "\n";
    return kExitInput;
  } catch (const vnd::Error& e) {
    std::cerr << "vnd: " << e.what() << "\n";
    return kExitNumeric;
  }
}

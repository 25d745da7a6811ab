#include "vnd/suites.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vnd/channels.hpp"
#include "vnd/inclusions.hpp"
#include "vnd/problem.hpp"
#include "vnd/random.hpp"
#include "vnd/variational.hpp"

namespace vnd {

namespace {

using F = std::string (*)(double);
const F fmt = format_double;

std::vector<double> orders(const RunFlags& f, std::vector<double> fallback) {
  return f.s.empty() ? fallback : f.s;
}

int samples(const RunFlags& f, int fallback) { return f.samples >= 0 ? f.samples : fallback; }
double tol(const RunFlags& f, double fallback) { return f.tol > 0.0 ? f.tol : fallback; }

// Rows: suite, check, sample, value, reference, deviation, tolerance, status.
class Checker {
 public:
  explicit Checker(std::string suite) : suite_(std::move(suite)) {
    report_.table.columns = {"suite", "check", "sample", "value", "reference", "deviation", "tolerance", "status"};
  }

  // Hard check: deviation <= tolerance.
  void hard(const std::string& check, int sample, double value, double reference, double deviation, double tolerance) {
    bool ok = deviation <= tolerance;
    if (!ok) ++report_.hard_failures;
    add(check, sample, value, reference, deviation, tolerance, ok ? "pass" : "FAIL");
  }

  void soft(const std::string& check, int sample, double value, double reference, double deviation, double tolerance) {
    bool ok = deviation <= tolerance;
    if (!ok) ++report_.soft_failures;
    add(check, sample, value, reference, deviation, tolerance, ok ? "pass" : "soft-fail");
  }

  SuiteReport take() { return std::move(report_); }

 private:
  void add(const std::string& check, int sample, double value, double reference, double deviation,
           double tolerance, const char* status) {
    report_.table.add({suite_, check, std::to_string(sample), fmt(value), fmt(reference), fmt(deviation),
                       fmt(tolerance), status});
  }

  std::string suite_;
  SuiteReport report_;
};

SuiteReport suite_quadrature(const RunFlags& f) {
  Checker c("quadrature_selftest");
  double t = tol(f, 1e-8);
  int k = 0;
  for (double alpha : {0.25, 0.5, 0.75}) {
    QuadratureGrid grid = build_grid(alpha, f.grid);
    for (double lambda : {0.5, 1.0, 2.0}) {
      double exact = std::numbers::pi / std::sin(std::numbers::pi * alpha) * std::pow(lambda, alpha);
      double got = self_test_integral(lambda, grid).value;
      std::ostringstream name;
      name << "lambda=" << lambda << ";alpha=" << alpha;
      c.hard(name.str(), k++, got, exact, std::abs(got - exact), t);
    }
  }
  return c.take();
}

SuiteReport suite_kosaki(const RunFlags& f) {
  Checker c("kosaki_vs_umegaki");
  double t = tol(f, 1e-4);
  int n = samples(f, 50);
  for (int i = 0; i < n; ++i) {
    Rng rng(f.seed + static_cast<std::uint64_t>(i));
    Index d = 2 + i % 3;
    State rho = random_mixed_state(d, rng), sigma = random_mixed_state(d, rng);
    double k = kosaki_entropy(rho, sigma, f.grid).value;
    double u = relative_entropy(rho, sigma).value;
    c.hard("kosaki_entropy", i, k, u, std::abs(k - u), t);
  }
  return c.take();
}

SuiteReport suite_dpi(const RunFlags& f) {
  Checker c("dpi");
  DpiOptions opts;
  opts.samples = samples(f, 50);
  opts.seed = f.seed;
  opts.identity_only = f.identity_only;
  opts.hard_tol = tol(f, 1e-9);
  opts.grid = f.grid;
  std::vector<std::string> specs = {"relative_entropy", "fidelity"};
  for (double s : orders(f, {0.6, 0.9})) specs.push_back("sandwiched_renyi:" + format_double(s));
  for (double s : orders(f, {0.75})) {
    if (s > 0.5 && s < 1.0) specs.push_back("generalized_fidelity:" + format_double(s));
  }
  for (const auto& name : specs) {
    DivergenceSpec spec = DivergenceSpec::parse(name);
    DpiReport rep = dpi_harness(spec, opts);
    for (const auto& row : rep.rows) {
      if (spec.hard()) c.hard(spec.name(), row.sample, row.post, row.pre, row.violation, opts.hard_tol);
      else c.soft(spec.name(), row.sample, row.post, row.pre, row.violation, opts.soft_tol);
    }
  }
  return c.take();
}

SuiteReport suite_certainty(const RunFlags& f) {
  Checker c("certainty");
  int n = samples(f, 50);
  double t = tol(f, 1e-6);
  std::vector<double> ss = orders(f, {0.6, 0.75, 0.9});
  const std::vector<std::pair<int, std::string>> scenarios = {
      {2, "Z2_pauli"}, {3, "Zn_clock"}, {2, "pauli_group"}, {3, "pauli_group"}};
  for (const auto& [dim, group] : scenarios) {
    std::string tag = group + ":n=" + std::to_string(dim);
    InclusionScenario scn = build_orbifold_inclusion(dim, group, ComplexVector::Ones(dim * dim));
    for (int i = 0; i < n; ++i) {
      Rng rng(f.seed + static_cast<std::uint64_t>(i));
      scn.psi = random_pure_vector(dim * dim, rng);
      CertaintyResult cr = certainty_relation(scn);
      c.hard(tag + ":entropy_sum", i, cr.sum, cr.log_index, std::abs(cr.deviation()), t);
      for (double s : ss) {
        CertaintyResult rr = renyi_certainty(scn, s);
        c.hard(tag + ":renyi_sum:s=" + format_double(s), i, rr.sum, rr.log_index, rr.deviation(), 1e-9);
      }
      FidelityCertaintyResult fc = fidelity_certainty(scn);
      c.hard(tag + ":fidelity_product", i, fc.product, fc.bound, fc.bound - fc.product, 1e-9);
    }
  }
  return c.take();
}

SuiteReport suite_phi_bounds(const RunFlags& f) {
  Checker c("phi_bounds");
  int n = samples(f, 20);
  std::vector<double> ss = orders(f, {0.6, 0.75, 0.9});
  PhiSolverOptions solver;
  solver.certify = false;
  for (int i = 0; i < n; ++i) {
    Rng rng(f.seed + static_cast<std::uint64_t>(i));
    Index d = 2 + i % 2;
    State rho = random_mixed_state(d, rng), sigma = random_mixed_state(d, rng);
    std::vector<DivergenceResult> phi = generalized_fidelity(rho, sigma, ss, f.grid, solver);
    for (std::size_t k = 0; k < ss.size(); ++k) {
      const DivergenceResult& r = phi[k];
      std::string tag = ":s=" + format_double(ss[k]);
      double fid = r.diagnostics.at("fidelity");
      double neg_log_f2 = -std::log(fid * fid);
      double ds = r.diagnostics.at("sandwiched_renyi");
      c.hard("upper>=phi" + tag, i, r.value, r.upper, r.value - r.upper, 0.0);
      c.hard("phi>=-logF2-0.05" + tag, i, r.value, neg_log_f2, neg_log_f2 - r.value, 0.05);
      c.hard("renyi<=upper" + tag, i, ds, r.upper, ds - r.upper, 1e-9);
      c.soft("phi>=renyi" + tag, i, r.value, ds, ds - r.value, 1e-6);
    }
  }
  return c.take();
}

Table experiment_bell(const RunFlags& f) {
  BellOrbifoldOptions opts;
  opts.product_state = f.product_state;
  opts.grid = f.grid;
  std::vector<BellOrbifoldRow> rows = bell_orbifold_experiment(f.n, f.group, orders(f, {0.6, 0.75, 0.9}), opts);
  Table t;
  t.columns = {"n", "group", "state", "s", "sandwiched_renyi", "phi_hat", "phi_dual_upper", "fidelity",
               "reference", "deviation_renyi", "deviation_phi", "fidelity_reference", "deviation_fidelity",
               "log_index"};
  for (const auto& r : rows) {
    double ref = f.product_state ? 0.0 : r.log_group_order;
    double fref = f.product_state ? 1.0 : std::exp(-0.5 * r.log_group_order);
    t.add({std::to_string(f.n), f.group, f.product_state ? "product" : "bell", fmt(r.s), fmt(r.sandwiched_renyi),
           fmt(r.phi_hat), fmt(r.phi_dual_upper), fmt(r.fidelity), fmt(ref), fmt(r.sandwiched_renyi - ref),
           fmt(r.phi_hat - ref), fmt(fref), fmt(r.fidelity - fref), fmt(r.log_index)});
  }
  return t;
}

Table experiment_diagonal(const RunFlags& f) {
  Table t;
  t.columns = {"sample", "dim", "s", "phi_hat", "phi_dual_upper", "reference", "deviation", "sandwiched_renyi",
               "neg_log_f2"};
  int n = samples(f, 10);
  std::vector<double> ss = orders(f, {0.6, 0.75, 0.9});
  for (int i = 0; i < n; ++i) {
    Rng rng(f.seed + static_cast<std::uint64_t>(i));
    Index d = 2 + i % 3;
    State rho = random_diagonal_state(d, rng), sigma = random_diagonal_state(d, rng);
    std::vector<DivergenceResult> phi = generalized_fidelity(rho, sigma, ss, f.grid);
    for (std::size_t k = 0; k < ss.size(); ++k) {
      const DivergenceResult& r = phi[k];
      double fid = r.diagnostics.at("fidelity");
      t.add({std::to_string(i), std::to_string(d), fmt(ss[k]), fmt(r.value), fmt(r.diagnostics.at("dual_upper")),
             fmt(r.upper), fmt(r.value - r.upper), fmt(r.diagnostics.at("sandwiched_renyi")),
             fmt(-std::log(fid * fid))});
    }
  }
  return t;
}

Table experiment_certainty(const RunFlags& f) {
  Table t;
  t.columns = {"n", "group", "sample", "s_M", "s_N_prime", "sum", "log_index", "deviation"};
  int n = samples(f, 20);
  InclusionScenario scn = build_orbifold_inclusion(f.n, f.group, ComplexVector::Ones(f.n * f.n));
  for (int i = 0; i < n; ++i) {
    Rng rng(f.seed + static_cast<std::uint64_t>(i));
    scn.psi = random_pure_vector(f.n * f.n, rng);
    CertaintyResult c = certainty_relation(scn);
    t.add({std::to_string(f.n), f.group, std::to_string(i), fmt(c.s_M), fmt(c.s_N_prime), fmt(c.sum),
           fmt(c.log_index), fmt(c.deviation())});
  }
  return t;
}

}  // namespace

std::string RunFlags::canonical() const {
  std::ostringstream os;
  os << "--s=";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ";" : "") << format_double(s[i]);
  os << " --t-min=" << format_double(grid.t_min) << " --t-max=" << format_double(grid.t_max)
     << " --grid-points=" << grid.n_points << " --tol=" << format_double(tol) << " --seed=" << seed
     << " --samples=" << samples << " --identity-only=" << (identity_only ? 1 : 0) << " --n=" << n
     << " --group=" << group << " --product=" << (product_state ? 1 : 0);
  return os.str();
}

std::vector<std::string> verify_suites() {
  return {"dpi", "certainty", "phi_bounds", "kosaki_vs_umegaki", "quadrature_selftest"};
}

std::vector<std::string> experiment_names() { return {"bell_orbifold", "diagonal_closed_form", "certainty_sweep"}; }

SuiteReport run_verify_suite(const std::string& suite, const RunFlags& flags) {
  if (suite == "dpi") return suite_dpi(flags);
  if (suite == "certainty") return suite_certainty(flags);
  if (suite == "phi_bounds") return suite_phi_bounds(flags);
  if (suite == "kosaki_vs_umegaki") return suite_kosaki(flags);
  if (suite == "quadrature_selftest") return suite_quadrature(flags);
  throw ProblemError("unknown verify suite '" + suite + "'");
}

Table run_experiment(const std::string& name, const RunFlags& flags) {
  if (name == "bell_orbifold") return experiment_bell(flags);
  if (name == "diagonal_closed_form") return experiment_diagonal(flags);
  if (name == "certainty_sweep") return experiment_certainty(flags);
  throw ProblemError("unknown experiment '" + name + "'");
}

}  // namespace vnd

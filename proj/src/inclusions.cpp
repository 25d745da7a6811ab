#include "vnd/inclusions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vnd/errors.hpp"

namespace vnd {

namespace {

ComplexMatrix clock(Index n) {
  ComplexMatrix z = ComplexMatrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) z(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
  return z;
}

ComplexMatrix shift(Index n) {
  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) x((j + 1) % n, j) = 1.0;
  return x;
}

ComplexMatrix power(const ComplexMatrix& a, Index k) {
  ComplexMatrix out = ComplexMatrix::Identity(a.rows(), a.cols());
  for (Index i = 0; i < k; ++i) out = out * a;
  return out;
}

ComplexMatrix identity_kron_left(const ComplexMatrix& a, Index n) {
  return kron(a, ComplexMatrix::Identity(n, n));
}

}  // namespace

std::vector<ComplexMatrix> named_group(const std::string& name, Index n) {
  if (n < 1) throw InvalidInput("named_group: dimension must be positive");
  std::vector<ComplexMatrix> g;
  if (name == "trivial") {
    g.push_back(ComplexMatrix::Identity(n, n));
  } else if (name == "Z2_pauli") {
    if (n != 2) throw InvalidInput("named_group: Z2_pauli needs n = 2");
    g.push_back(ComplexMatrix::Identity(2, 2));
    g.push_back(clock(2));
  } else if (name == "Zn_clock") {
    ComplexMatrix z = clock(n);
    for (Index k = 0; k < n; ++k) g.push_back(power(z, k));
  } else if (name == "pauli_group") {
    ComplexMatrix x = shift(n), z = clock(n);
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) g.push_back(power(x, a) * power(z, b));
  } else {
    throw InvalidInput("named_group: unknown group '" + name + "'");
  }
  return g;
}

InclusionScenario build_orbifold_inclusion(Index n, const std::vector<ComplexMatrix>& rep,
                                           const ComplexVector& psi, const std::string& group_name) {
  if (n < 1) throw InvalidInput("build_orbifold_inclusion: n must be positive");
  if (psi.size() != n * n) {
    std::ostringstream os;
    os << "build_orbifold_inclusion: state vector has length " << psi.size() << ", expected " << n * n;
    throw InvalidInput(os.str());
  }
  if (!psi.allFinite() || psi.norm() == 0.0) throw InvalidInput("build_orbifold_inclusion: bad state vector");
  InclusionScenario scn;
  scn.site_dim = n;
  scn.hilbert_dim = n * n;
  scn.group_name = group_name;
  scn.rep = rep;
  scn.psi = psi / psi.norm();

  scn.E_site = group_average_expectation(rep, MatrixAlgebra::full(n));
  scn.M = MatrixAlgebra::tensor(MatrixAlgebra::full(n), MatrixAlgebra::scalars(n));
  scn.N = MatrixAlgebra::tensor(scn.E_site.subalgebra, MatrixAlgebra::scalars(n));
  scn.M_prime = MatrixAlgebra::tensor(MatrixAlgebra::scalars(n), MatrixAlgebra::full(n));
  scn.N_prime = commutant(scn.N);

  std::vector<ComplexMatrix> kraus;
  for (const auto& k : scn.E_site.base.kraus()) kraus.push_back(identity_kron_left(k, n));
  scn.E = make_conditional_expectation(Channel(kraus), scn.M, scn.N);
  scn.E_prime = trace_conditional_expectation(scn.N_prime, scn.M_prime);
  scn.index = pimsner_popa_index(scn.E_site);
  return scn;
}

InclusionScenario build_orbifold_inclusion(Index n, const std::string& group_name, const ComplexVector& psi) {
  return build_orbifold_inclusion(n, named_group(group_name, n), psi, group_name);
}

ScenarioStates scenario_states(const InclusionScenario& scn) {
  State omega = scn.state();
  auto make = [](const ComplexMatrix& m) { return State(HermitianMatrix::symmetrized(m)); };
  ComplexMatrix rho_m = scn.M.project(omega.density());
  ComplexMatrix rho_np = scn.N_prime.project(omega.density());
  return ScenarioStates{make(rho_m), make(scn.E.base.schrodinger(rho_m)), make(rho_np),
                        make(scn.E_prime.base.schrodinger(rho_np))};
}

CertaintyResult certainty_relation(const InclusionScenario& scn) {
  ScenarioStates st = scenario_states(scn);
  CertaintyResult r;
  r.s_M = relative_entropy(st.rho_M, st.sigma_M).value;
  r.s_N_prime = relative_entropy(st.rho_Np, st.sigma_Np).value;
  r.sum = r.s_M + r.s_N_prime;
  r.log_index = scn.log_index();
  return r;
}

CertaintyResult renyi_certainty(const InclusionScenario& scn, double s) {
  ScenarioStates st = scenario_states(scn);
  CertaintyResult r;
  r.s_M = sandwiched_renyi(st.rho_M, st.sigma_M, s).value;
  r.s_N_prime = sandwiched_renyi(st.rho_Np, st.sigma_Np, s).value;
  r.sum = r.s_M + r.s_N_prime;
  r.log_index = scn.log_index();
  return r;
}

FidelityCertaintyResult fidelity_certainty(const InclusionScenario& scn) {
  ScenarioStates st = scenario_states(scn);
  FidelityCertaintyResult r;
  r.f_M = fidelity(st.rho_M, st.sigma_M).value;
  r.f_N_prime = fidelity(st.rho_Np, st.sigma_Np).value;
  r.product = r.f_M * r.f_N_prime;
  r.bound = 1.0 / std::sqrt(scn.index.index);
  return r;
}

PhiIndexBound phi_index_bound(const InclusionScenario& scn, double s, const GridOptions& grid) {
  ScenarioStates st = scenario_states(scn);
  PhiIndexBound r;
  r.detail = generalized_fidelity(st.rho_M, st.sigma_M, s, grid);
  r.lower = r.detail.value;
  r.upper = r.detail.diagnostics.at("dual_upper");
  r.log_index = scn.log_index();
  return r;
}

std::vector<BellOrbifoldRow> bell_orbifold_experiment(Index n, const std::string& group_name,
                                                      const std::vector<double>& s_values,
                                                      const BellOrbifoldOptions& opts) {
  std::vector<ComplexMatrix> rep = named_group(group_name, n);
  ConditionalExpectation site = group_average_expectation(rep, MatrixAlgebra::full(n));
  IndexResult idx = pimsner_popa_index(site);
  std::vector<ComplexMatrix> kraus;
  for (const auto& a : site.base.kraus())
    for (const auto& b : site.base.kraus()) kraus.push_back(kron(a, b));
  Channel e(kraus);

  ComplexVector psi = ComplexVector::Zero(n * n);
  if (opts.product_state) {
    psi(0) = 1.0;
  } else {
    for (Index i = 0; i < n; ++i) psi(i * n + i) = 1.0 / std::sqrt(static_cast<double>(n));
  }
  State rho = State::from_vector(psi);
  State sigma = apply_schrodinger(e, rho);
  double f = fidelity(rho, sigma).value;
  std::vector<DivergenceResult> phi = generalized_fidelity(rho, sigma, s_values, opts.grid);

  std::vector<BellOrbifoldRow> rows;
  for (std::size_t k = 0; k < s_values.size(); ++k) {
    BellOrbifoldRow row;
    row.s = s_values[k];
    row.sandwiched_renyi = sandwiched_renyi(rho, sigma, s_values[k]).value;
    row.phi_hat = phi[k].value;
    row.phi_dual_upper = phi[k].diagnostics.at("dual_upper");
    row.fidelity = f;
    row.log_group_order = std::log(static_cast<double>(rep.size()));
    row.log_index = std::log(idx.index);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace vnd

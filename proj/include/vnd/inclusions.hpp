#pragma once

#include <string>
#include <vector>

#include "vnd/channels.hpp"
#include "vnd/variational.hpp"

namespace vnd {

// Orbifold inclusion N = M_n^G (x) 1 in M = M_n (x) 1 on C^n (x) C^n, with
// M' = 1 (x) M_n, N' = commutant(N), E the group average and E' the
// trace-preserving expectation N' -> M'.
struct InclusionScenario {
  Index site_dim = 0;
  Index hilbert_dim = 0;
  std::string group_name;
  std::vector<ComplexMatrix> rep;
  MatrixAlgebra M, N, M_prime, N_prime;
  ConditionalExpectation E;        // M -> N on the ambient space
  ConditionalExpectation E_prime;  // N' -> M'
  ConditionalExpectation E_site;   // M_n -> M_n^G
  IndexResult index;
  ComplexVector psi;

  double log_index() const { return std::log(index.index); }
  State state() const { return State::from_vector(psi); }
};

// Named unitary groups on C^n: "trivial", "Z2_pauli" (n = 2, {1, Z}),
// "Zn_clock" ({Z^k}), "pauli_group" (Weyl-Heisenberg X^a Z^b mod phases).
std::vector<ComplexMatrix> named_group(const std::string& name, Index n);

InclusionScenario build_orbifold_inclusion(Index n, const std::vector<ComplexMatrix>& rep,
                                           const ComplexVector& psi, const std::string& group_name = "custom");
InclusionScenario build_orbifold_inclusion(Index n, const std::string& group_name, const ComplexVector& psi);

// Densities of omega_psi on M and on N' (trace-preserving restrictions) and
// of their images under E and E'.
struct ScenarioStates {
  State rho_M, sigma_M;    // omega|M, omega o E |M
  State rho_Np, sigma_Np;  // omega|N', omega o E' |N'
};
ScenarioStates scenario_states(const InclusionScenario& scn);

struct CertaintyResult {
  double s_M = 0.0;
  double s_N_prime = 0.0;
  double sum = 0.0;
  double log_index = 0.0;
  double deviation() const { return sum - log_index; }
};

// S_M(omega | omega o E) + S_N'(omega' | omega' o E').
CertaintyResult certainty_relation(const InclusionScenario& scn);
CertaintyResult renyi_certainty(const InclusionScenario& scn, double s);

struct FidelityCertaintyResult {
  double f_M = 0.0;
  double f_N_prime = 0.0;
  double product = 0.0;
  double bound = 0.0;  // index^{-1/2}
};
FidelityCertaintyResult fidelity_certainty(const InclusionScenario& scn);

struct PhiIndexBound {
  double lower = 0.0;      // variational estimate of Phi_s(omega|M, omega o E|M)
  double upper = 0.0;      // dual-certified upper value
  double log_index = 0.0;
  DivergenceResult detail;
};
PhiIndexBound phi_index_bound(const InclusionScenario& scn, double s, const GridOptions& grid = {});

// Two-site experiment on M_n (x) M_n with E = E_G (x) E_G and a maximally
// entangled (or product) state.
struct BellOrbifoldRow {
  double s = 0.0;
  double sandwiched_renyi = 0.0;
  double phi_hat = 0.0;
  double phi_dual_upper = 0.0;
  double fidelity = 0.0;
  double log_group_order = 0.0;
  double log_index = 0.0;
};
struct BellOrbifoldOptions {
  bool product_state = false;
  GridOptions grid;
};
std::vector<BellOrbifoldRow> bell_orbifold_experiment(Index n, const std::string& group_name,
                                                      const std::vector<double>& s_values,
                                                      const BellOrbifoldOptions& opts = {});

}  // namespace vnd

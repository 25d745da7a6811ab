#pragma once

#include <vector>

#include "vnd/divergences.hpp"
#include "vnd/quadrature.hpp"

namespace vnd {

// Minimizer of Tr(rho x*x) + t^{-1} Tr(sigma (1-x)(1-x)*).
struct KosakiNode {
  ComplexMatrix x;
  double value = 0.0;
};

KosakiNode kosaki_per_t_minimizer(const State& rho, const State& sigma, double t);
double kosaki_objective(const State& rho, const State& sigma, const ComplexMatrix& x, double t);

// Relative entropy from the Kosaki formula on a log grid (alpha = 0).  The
// lower cutoff is reduced below opts.t_min when sigma has small eigenvalues.
DivergenceResult kosaki_entropy(const State& rho, const State& sigma, const GridOptions& opts = {});

// J(x) = Tr(rho x*x) + t^{-1} ||sqrt(rho) (1-x)* sqrt(sigma)||_1^2.
double phi_objective(const State& rho, const State& sigma, const ComplexMatrix& x, double t);

struct PhiNode {
  double t = 0.0;
  ComplexMatrix x;
  double value = 0.0;       // J(x), an upper bound on inf_x J
  double dual_lower = 0.0;  // certified lower bound on inf_x J
  int iterations = 0;
  bool closed_form = false;
};

// Values of inf_x J(x) along increasing t, with the minimizers.
struct VariationalPath {
  std::vector<double> t;
  std::vector<double> value;
  std::vector<double> dual_lower;
  std::vector<ComplexMatrix> x;
  std::vector<int> iterations;
  double fidelity = 0.0;
  Index algebra_dim = 0;
  int total_iterations = 0;
  int closed_form_nodes = 0;

  std::size_t size() const { return t.size(); }
};

struct PhiSolverOptions {
  // Optimization space; default is the *-algebra generated by rho and sigma.
  const MatrixAlgebra* algebra = nullptr;
  bool keep_minimizers = false;
  // Compute per-node dual certificates; without them dual_lower is the
  // bound F^2 / (t + Tr sigma).
  bool certify = true;
};

PhiNode phi_per_t_minimizer(const State& rho, const State& sigma, double t,
                            const MatrixAlgebra* alg = nullptr, const ComplexMatrix* init = nullptr);

// nodes must be strictly increasing and positive.
VariationalPath phi_path(const State& rho, const State& sigma, const std::vector<double>& nodes,
                         const PhiSolverOptions& opts = {});

// Phi_s(rho | sigma) for s in (1/2, 1); s is clamped to [0.501, 0.999].
DivergenceResult generalized_fidelity(const State& rho, const State& sigma, double s,
                                      const GridOptions& opts = {});
DivergenceResult generalized_fidelity(const State& rho, const State& sigma, double s,
                                      const QuadratureGrid& grid);
// One path shared by several orders.
std::vector<DivergenceResult> generalized_fidelity(const State& rho, const State& sigma,
                                                   const std::vector<double>& s_values,
                                                   const GridOptions& opts = {},
                                                   const PhiSolverOptions& solver = {});
DivergenceResult generalized_fidelity_from_path(const VariationalPath& path, const State& rho,
                                                const State& sigma, double s,
                                                const GridOptions& opts);

double clamp_order(double s);

}  // namespace vnd

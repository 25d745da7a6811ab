#pragma once

#include <limits>
#include <map>
#include <string>

#include "vnd/algebra.hpp"

namespace vnd {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct DivergenceResult {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::map<std::string, double> diagnostics;

  bool infinite() const { return value == kInf; }
  static DivergenceResult exact(double v) { return {v, v, v, {}}; }
};

// Umegaki: Tr rho (log rho - log sigma); +inf if supp rho is not in supp sigma.
DivergenceResult relative_entropy(const State& rho, const State& sigma);

// ||sqrt(rho) sqrt(sigma)||_1.
DivergenceResult fidelity(const State& rho, const State& sigma);

// (s-1)^{-1} log Tr (sigma^{(1-s)/2s} rho sigma^{(1-s)/2s})^s for
// s in (1/2, 1) u (1, inf).
DivergenceResult sandwiched_renyi(const State& rho, const State& sigma, double s);

// Delta_{psi,zeta}: X -> rho_psi X rho_zeta^{-1} on Hilbert-Schmidt space,
// inverse taken on the support.
class RelativeModularOperator {
 public:
  RelativeModularOperator(const State& psi, const State& zeta);

  Index dim() const { return left_.values.size(); }
  ComplexMatrix apply(const ComplexMatrix& x) const;
  // d^2 x d^2 matrix acting on column-major vec(X).
  ComplexMatrix superoperator() const;
  // <X, log(Delta) X>_HS.
  double log_expectation(const ComplexMatrix& x) const;

 private:
  EigenSystem left_;   // rho_psi
  EigenSystem right_;  // rho_zeta
};

RelativeModularOperator relative_modular_operator(const State& psi, const State& zeta);

// ||zeta||_{p,psi}^p = Tr(sigma^{(1-s)/2s} rho sigma^{(1-s)/2s})^s with
// p = 2s, rho the density of zeta and sigma the (faithful) density of psi.
double lp_norm_oracle(const State& zeta, const State& psi, double p);

}  // namespace vnd

#include "vnd/divergences.hpp"

#include <cmath>
#include <sstream>

#include "vnd/errors.hpp"

namespace vnd {

namespace {

void require_same_dim(const State& a, const State& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": dimension mismatch " << a.dim() << " vs " << b.dim();
    throw InvalidInput(os.str());
  }
}

// Weight of rho outside the support of sigma, relative to Tr rho.
double support_leak(const State& rho, const EigenSystem& sigma) {
  ComplexMatrix p = sigma.support_projection();
  double outside = rho.norm() - trace_product(p, rho.density()).real();
  return outside / std::max(rho.norm(), 1e-300);
}

constexpr double kLeakTol = 1e-10;

// Tr (sigma^a rho sigma^a)^s with a = (1-s)/2s.
double sandwiched_trace(const ComplexMatrix& rho, const EigenSystem& sigma, double s) {
  double a = (1.0 - s) / (2.0 * s);
  ComplexMatrix sa = sigma.apply([a](double x) { return std::pow(x, a); });
  ComplexMatrix q = sa * rho * sa;
  EigenSystem es = eig_hermitian(HermitianMatrix::symmetrized(q));
  double sum = 0.0;
  for (Index k = 0; k < es.values.size(); ++k)
    if (es.values(k) > es.threshold) sum += std::pow(es.values(k), s);
  return sum;
}

}  // namespace

DivergenceResult relative_entropy(const State& rho, const State& sigma) {
  require_same_dim(rho, sigma, "relative_entropy");
  EigenSystem es_sigma = eig_hermitian(sigma.hermitian());
  double leak = support_leak(rho, es_sigma);
  if (leak > kLeakTol) {
    DivergenceResult r{kInf, kInf, kInf, {}};
    r.diagnostics["support_leak"] = leak;
    return r;
  }
  EigenSystem es_rho = eig_hermitian(rho.hermitian());
  double v = 0.0;
  for (Index k = 0; k < es_rho.values.size(); ++k) {
    double p = es_rho.values(k);
    if (p > es_rho.threshold) v += p * std::log(p);
  }
  ComplexMatrix log_sigma = es_sigma.apply([](double x) { return std::log(x); });
  v -= trace_product(rho.density(), log_sigma).real();
  return DivergenceResult::exact(v);
}

DivergenceResult fidelity(const State& rho, const State& sigma) {
  require_same_dim(rho, sigma, "fidelity");
  ComplexMatrix a = matrix_power(rho.density(), 0.5);
  ComplexMatrix b = matrix_power(sigma.density(), 0.5);
  return DivergenceResult::exact(trace_norm(a * b));
}

DivergenceResult sandwiched_renyi(const State& rho, const State& sigma, double s) {
  require_same_dim(rho, sigma, "sandwiched_renyi");
  if (!(s > 0.5) || s == 1.0 || !std::isfinite(s)) {
    std::ostringstream os;
    os << "sandwiched_renyi: order s = " << s << " outside (1/2,1) u (1,inf)";
    throw InvalidInput(os.str());
  }
  EigenSystem es_sigma = eig_hermitian(sigma.hermitian());
  if (s > 1.0) {
    double leak = support_leak(rho, es_sigma);
    if (leak > kLeakTol) {
      DivergenceResult r{kInf, kInf, kInf, {}};
      r.diagnostics["support_leak"] = leak;
      return r;
    }
  }
  double q = sandwiched_trace(rho.density(), es_sigma, s);
  if (q <= 0.0) return {kInf, kInf, kInf, {}};
  return DivergenceResult::exact(std::log(q) / (s - 1.0));
}

RelativeModularOperator::RelativeModularOperator(const State& psi, const State& zeta)
    : left_(eig_hermitian(psi.hermitian())), right_(eig_hermitian(zeta.hermitian())) {
  require_same_dim(psi, zeta, "relative_modular_operator");
}

ComplexMatrix RelativeModularOperator::apply(const ComplexMatrix& x) const {
  ComplexMatrix l = left_.apply([](double v) { return v; });
  ComplexMatrix r = right_.apply([](double v) { return 1.0 / v; });
  return l * x * r;
}

ComplexMatrix RelativeModularOperator::superoperator() const {
  ComplexMatrix l = left_.apply([](double v) { return v; });
  ComplexMatrix r = right_.apply([](double v) { return 1.0 / v; });
  return kron(r.transpose(), l);
}

double RelativeModularOperator::log_expectation(const ComplexMatrix& x) const {
  // In the eigenbases, Delta acts on |a_i><z_j| by a_i / z_j.
  ComplexMatrix y = left_.vectors.adjoint() * x * right_.vectors;
  double v = 0.0;
  for (Index i = 0; i < y.rows(); ++i) {
    if (left_.values(i) <= left_.threshold) continue;
    for (Index j = 0; j < y.cols(); ++j) {
      if (right_.values(j) <= right_.threshold) continue;
      v += std::norm(y(i, j)) * (std::log(left_.values(i)) - std::log(right_.values(j)));
    }
  }
  return v;
}

RelativeModularOperator relative_modular_operator(const State& psi, const State& zeta) {
  return RelativeModularOperator(psi, zeta);
}

double lp_norm_oracle(const State& zeta, const State& psi, double p) {
  require_same_dim(zeta, psi, "lp_norm_oracle");
  if (!(p > 1.0 && p <= 2.0)) {
    std::ostringstream os;
    os << "lp_norm_oracle: p = " << p << " outside (1,2]";
    throw InvalidInput(os.str());
  }
  EigenSystem es = eig_hermitian(psi.hermitian());
  if (es.support_rank != psi.dim()) throw Unsupported("lp_norm_oracle: reference state is not faithful");
  return sandwiched_trace(zeta.density(), es, p / 2.0);
}

}  // namespace vnd

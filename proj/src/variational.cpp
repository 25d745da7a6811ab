#include "vnd/variational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vnd/errors.hpp"

namespace vnd {

namespace {

void check_pair(const State& rho, const State& sigma, const char* what) {
  if (rho.dim() != sigma.dim()) {
    std::ostringstream os;
    os << what << ": dimension mismatch " << rho.dim() << " vs " << sigma.dim();
    throw InvalidInput(os.str());
  }
}

void check_t(double t, const char* what) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    std::ostringstream os;
    os << what << ": t = " << t << " must be positive";
    throw InvalidInput(os.str());
  }
}

double logdet_llt(const Eigen::LLT<ComplexMatrix>& llt) {
  double s = 0.0;
  const auto& l = llt.matrixLLT();
  for (Index i = 0; i < l.rows(); ++i) s += std::log(l(i, i).real());
  return 2.0 * s;
}

// Per-t problem in reduced form:
//   g(t) = min Tr(rho w)  over  0 < w <= 1,  Tr(sigma w^{-1}) <= t + Tr sigma,
// with x = w a minimizer of J.  Solved by a log-barrier Newton method in a
// Hermitian basis of the optimization algebra.
class PhiSolver {
 public:
  PhiSolver(const State& rho, const State& sigma, const MatrixAlgebra& alg)
      : rho_(rho.density()), sigma_(sigma.density()), d_(rho.dim()) {
    basis_ = alg.hermitian_basis();
    m_ = static_cast<Index>(basis_.size());
    tr_rho_ = rho.norm();
    tr_sigma_ = sigma.norm();
    rho_b_.resize(m_);
    id_coords_.resize(m_);
    for (Index k = 0; k < m_; ++k) {
      rho_b_(k) = trace_product(rho_, basis_[k]).real();
      id_coords_(k) = basis_[k].trace().real();
    }
    sqrt_rho_ = matrix_power(rho_, 0.5);
    sqrt_sigma_ = matrix_power(sigma_, 0.5);
    fid_ = trace_norm(sqrt_rho_ * sqrt_sigma_);
    nu_ = 2.0 * static_cast<double>(d_) + 1.0;

    EigenSystem er = eig_hermitian(rho_);
    if (er.support_rank == d_ && fid_ > 0.0) {
      // Unconstrained optimum w = F G / (t + Tr sigma), G = rho^{-1} # sigma.
      ComplexMatrix rih = er.apply([](double v) { return 1.0 / std::sqrt(v); });
      ComplexMatrix inner = matrix_power(ComplexMatrix(sqrt_rho_ * sigma_ * sqrt_rho_), 0.5);
      geo_ = rih * inner * rih;
      geo_ = (geo_ + geo_.adjoint()).eval() / 2.0;
      t_free_ = fid_ * eig_hermitian(geo_).max() - tr_sigma_;
      has_free_ = true;
    }
  }

  double fidelity() const { return fid_; }
  Index algebra_dim() const { return m_; }

  double objective(const ComplexMatrix& x, double t) const {
    ComplexMatrix y = ComplexMatrix::Identity(d_, d_) - x;
    double a = trace_product(rho_, ComplexMatrix(x.adjoint() * x)).real();
    double b = trace_norm(sqrt_rho_ * y.adjoint() * sqrt_sigma_);
    return a + b * b / t;
  }

  // Dual bound F(rho + Z, sigma)^2 / (t + Tr sigma) - Tr Z, Z >= 0.
  double dual(const ComplexMatrix& z, double t) const {
    ComplexMatrix a = sqrt_sigma_ * (rho_ + z) * sqrt_sigma_;
    EigenSystem es = eig_hermitian(HermitianMatrix::symmetrized(a));
    double f = 0.0;
    for (Index k = 0; k < es.values.size(); ++k) f += std::sqrt(std::max(es.values(k), 0.0));
    return f * f / (t + tr_sigma_) - z.trace().real();
  }

  // Z = (mu w^{-1} sigma w^{-1} - rho)_+, which is exact at the optimum for
  // the right mu; mu is located by golden section around kappa / slack.
  double dual_from_primal(const RealVector& theta, double kappa, double tau, double t) const {
    Parts p;
    if (!parts(theta, tau, p)) return 0.0;
    ComplexMatrix mm = p.wi * sigma_ * p.wi;
    auto bound = [&](double mu) {
      EigenSystem es = eig_hermitian(HermitianMatrix::symmetrized(mu * mm - rho_));
      return dual(es.apply([](double v) { return v; }), t);
    };
    auto golden = [&](double centre) {
      const double r = (std::sqrt(5.0) - 1.0) / 2.0;
      double lo = centre - 0.5, hi = centre + 0.5;
      double a = hi - r * (hi - lo), b = lo + r * (hi - lo);
      double fa = bound(std::exp(a)), fb = bound(std::exp(b));
      for (int k = 0; k < 36; ++k) {
        if (fa < fb) {
          lo = a;
          a = b;
          fa = fb;
          b = lo + r * (hi - lo);
          fb = bound(std::exp(b));
        } else {
          hi = b;
          b = a;
          fb = fa;
          a = hi - r * (hi - lo);
          fa = bound(std::exp(a));
        }
      }
      return std::max(fa, fb);
    };
    double best = dual(kappa * p.ui, t);
    double guess = std::log(kappa / p.slack);
    double scan_log = guess, scan_val = -kInf;
    for (int k = -12; k <= 12; ++k) {
      double u = guess + 0.5 * k;
      double v = bound(std::exp(u));
      if (v > scan_val) {
        scan_val = v;
        scan_log = u;
      }
    }
    best = std::max({best, scan_val, golden(guess)});
    if (scan_log != guess) best = std::max(best, golden(scan_log));
    return best;
  }

  PhiNode solve(double t, RealVector* warm, bool certify = true) {
    check_t(t, "phi_per_t_minimizer");
    PhiNode node;
    node.t = t;
    if (fid_ == 0.0) {
      node.x = ComplexMatrix::Zero(d_, d_);
      node.value = 0.0;
      node.dual_lower = 0.0;
      return node;
    }
    double tau = t + tr_sigma_;
    double g_scale = fid_ * fid_ / tau;
    if (has_free_ && t >= t_free_) {
      node.x = (fid_ / tau) * geo_;
      node.value = objective(node.x, t);
      node.dual_lower = g_scale;
      node.closed_form = true;
    } else {
      RealVector theta;
      double kappa0;
      if (warm != nullptr && warm->size() == m_ && feasible(*warm, tau)) {
        theta = *warm;
        kappa0 = 1e-2 * g_scale / nu_;
      } else {
        double beta = (tr_sigma_ + t / 2.0) / (tr_sigma_ + t);
        theta = beta * id_coords_;
        kappa0 = g_scale;
      }
      double kappa_final = 1e-11 * g_scale / nu_;
      double kappa = kappa0;
      bool first = true;
      while (true) {
        node.iterations += centre(theta, kappa, tau);
        if (first && warm != nullptr) *warm = theta;
        first = false;
        if (kappa <= kappa_final) break;
        kappa = std::max(kappa / 50.0, kappa_final);
      }
      ComplexMatrix w = assemble(theta);
      node.x = w;
      node.value = objective(w, t);
      node.dual_lower = certify ? std::max(dual_from_primal(theta, kappa, tau, t), g_scale) : g_scale;
    }
    // Scalar path x = c 1 as a fallback candidate.
    double c = fid_ * fid_ / (t * tr_rho_ + fid_ * fid_);
    double scalar = tr_rho_ * fid_ * fid_ / (t * tr_rho_ + fid_ * fid_);
    if (scalar < node.value) {
      node.value = scalar;
      node.x = c * ComplexMatrix::Identity(d_, d_);
    }
    node.dual_lower = std::min(node.dual_lower, node.value);
    return node;
  }

 private:
  ComplexMatrix assemble(const RealVector& theta) const {
    ComplexMatrix w = ComplexMatrix::Zero(d_, d_);
    for (Index k = 0; k < m_; ++k) w += theta(k) * basis_[k];
    return (w + w.adjoint()) / 2.0;
  }

  struct Parts {
    ComplexMatrix wi, ui;
    double slack = 0.0;
    double logdet_w = 0.0, logdet_u = 0.0;
  };

  bool parts(const RealVector& theta, double tau, Parts& p) const {
    ComplexMatrix w = assemble(theta);
    ComplexMatrix id = ComplexMatrix::Identity(d_, d_);
    Eigen::LLT<ComplexMatrix> lw(w);
    if (lw.info() != Eigen::Success) return false;
    Eigen::LLT<ComplexMatrix> lu(id - w);
    if (lu.info() != Eigen::Success) return false;
    p.logdet_w = logdet_llt(lw);
    p.logdet_u = logdet_llt(lu);
    if (!std::isfinite(p.logdet_w) || !std::isfinite(p.logdet_u)) return false;
    p.wi = lw.solve(id);
    p.ui = lu.solve(id);
    p.slack = tau - trace_product(sigma_, p.wi).real();
    return p.slack > 0.0;
  }

  bool feasible(const RealVector& theta, double tau) const {
    Parts p;
    return parts(theta, tau, p);
  }

  double barrier(const RealVector& theta, const Parts& p, double kappa) const {
    return rho_b_.dot(theta) / kappa - p.logdet_u - p.logdet_w - std::log(p.slack);
  }

  // Newton iterations at fixed kappa; returns the iteration count.
  int centre(RealVector& theta, double kappa, double tau) const {
    Parts p;
    if (!parts(theta, tau, p)) throw NotPositive("phi_per_t_minimizer: lost feasibility");
    double f = barrier(theta, p, kappa);
    std::vector<ComplexMatrix> pu(m_), qw(m_), rm(m_);
    RealVector grad(m_), sp(m_);
    Eigen::MatrixXd hess(m_, m_);
    int it = 0;
    for (; it < 60; ++it) {
      ComplexMatrix mm = p.wi * sigma_ * p.wi;
      for (Index k = 0; k < m_; ++k) {
        pu[k] = p.ui * basis_[k];
        qw[k] = p.wi * basis_[k];
        rm[k] = mm * basis_[k];
        sp(k) = rm[k].trace().real();
        grad(k) = rho_b_(k) / kappa + pu[k].trace().real() - qw[k].trace().real() - sp(k) / p.slack;
      }
      for (Index k = 0; k < m_; ++k)
        for (Index l = k; l < m_; ++l) {
          double h = trace_product(pu[k], pu[l]).real() + trace_product(qw[k], qw[l]).real() +
                     sp(k) * sp(l) / (p.slack * p.slack) +
                     (trace_product(rm[k], qw[l]).real() + trace_product(rm[l], qw[k]).real()) / p.slack;
          hess(k, l) = h;
          hess(l, k) = h;
        }
      Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
      RealVector step = -ldlt.solve(grad);
      double decrement = -grad.dot(step);
      if (!std::isfinite(decrement) || decrement < 0.0) break;
      if (decrement / 2.0 < 1e-10) break;
      double a = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, a *= 0.5) {
        RealVector trial = theta + a * step;
        Parts q;
        if (!parts(trial, tau, q)) continue;
        double ft = barrier(trial, q, kappa);
        if (ft <= f - 0.25 * a * decrement) {
          theta = trial;
          p = std::move(q);
          moved = f - ft > 1e-13 * (std::abs(f) + 1.0);
          f = ft;
          break;
        }
      }
      if (!moved) break;
    }
    return it + 1;
  }

  ComplexMatrix rho_, sigma_, sqrt_rho_, sqrt_sigma_, geo_;
  Index d_, m_ = 0;
  std::vector<ComplexMatrix> basis_;
  RealVector rho_b_, id_coords_;
  double tr_rho_ = 1.0, tr_sigma_ = 1.0, fid_ = 0.0, nu_ = 1.0;
  double t_free_ = kInf;
  bool has_free_ = false;
};

MatrixAlgebra optimization_algebra(const State& rho, const State& sigma, const MatrixAlgebra* alg) {
  if (alg != nullptr) {
    if (alg->ambient_dim() != rho.dim()) throw InvalidInput("phi: algebra has wrong ambient dimension");
    if (!alg->contains_identity()) throw InvalidInput("phi: optimization algebra must be unital");
    return *alg;
  }
  return close_star_algebra({rho.density(), sigma.density()}, rho.dim());
}

}  // namespace

KosakiNode kosaki_per_t_minimizer(const State& rho, const State& sigma, double t) {
  check_pair(rho, sigma, "kosaki_per_t_minimizer");
  check_t(t, "kosaki_per_t_minimizer");
  EigenSystem es = eig_hermitian(sigma.hermitian());
  EigenSystem er = eig_hermitian(rho.hermitian());
  ComplexMatrix c = es.vectors.adjoint() * er.vectors;
  const Index d = rho.dim();
  ComplexMatrix xt(d, d);
  double value = 0.0;
  for (Index i = 0; i < d; ++i) {
    double s = std::max(es.values(i), 0.0);
    for (Index j = 0; j < d; ++j) {
      double r = std::max(er.values(j), 0.0);
      double den = s + t * r;
      xt(i, j) = den > 0.0 ? s * c(i, j) / den : cplx(0.0);
      if (den > 0.0) value += std::norm(c(i, j)) * r * s / den;
    }
  }
  return {es.vectors * xt * er.vectors.adjoint(), value};
}

double kosaki_objective(const State& rho, const State& sigma, const ComplexMatrix& x, double t) {
  check_pair(rho, sigma, "kosaki_objective");
  ComplexMatrix y = ComplexMatrix::Identity(rho.dim(), rho.dim()) - x;
  return trace_product(rho.density(), ComplexMatrix(x.adjoint() * x)).real() +
         trace_product(sigma.density(), ComplexMatrix(y * y.adjoint())).real() / t;
}

DivergenceResult kosaki_entropy(const State& rho, const State& sigma, const GridOptions& opts) {
  check_pair(rho, sigma, "kosaki_entropy");
  EigenSystem es = eig_hermitian(sigma.hermitian());
  EigenSystem er = eig_hermitian(rho.hermitian());
  ComplexMatrix c = es.vectors.adjoint() * er.vectors;
  const Index d = rho.dim();
  // Support check: rho must not charge the kernel of sigma.
  double leak = 0.0;
  for (Index i = 0; i < d; ++i) {
    if (es.values(i) > es.threshold) continue;
    for (Index j = 0; j < d; ++j) leak += std::norm(c(i, j)) * std::max(er.values(j), 0.0);
  }
  if (leak > 1e-10 * std::max(rho.norm(), 1e-300)) {
    DivergenceResult r{kInf, kInf, kInf, {}};
    r.diagnostics["support_leak"] = leak;
    return r;
  }
  // Below t ~ min(sigma)/max(rho) the integrand has not reached its linear
  // regime, so the cutoff is lowered until x = t_min max(rho)/min(sigma) is
  // small; the node density per decade is kept.
  double s_min = kInf;
  for (Index i = 0; i < d; ++i)
    if (es.values(i) > es.threshold) s_min = std::min(s_min, es.values(i));
  double r_max = std::max(er.max(), 1e-300);
  GridOptions eff = opts;
  eff.t_min = std::min(opts.t_min, 1e-3 * s_min / r_max);
  if (eff.t_min < opts.t_min) {
    double stretch = std::log(opts.t_max / eff.t_min) / std::log(opts.t_max / opts.t_min);
    eff.n_points = static_cast<int>(std::ceil(opts.n_points * stretch));
  }
  double x_max = eff.t_min * r_max / s_min;
  QuadratureGrid grid = build_grid(0.0, eff);
  std::vector<double> g(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    double t = grid.nodes[k], v = 0.0;
    for (Index i = 0; i < d; ++i) {
      double s = std::max(es.values(i), 0.0);
      if (s <= es.threshold) continue;
      for (Index j = 0; j < d; ++j) {
        double r = std::max(er.values(j), 0.0);
        v += std::norm(c(i, j)) * r * s / (s + t * r);
      }
    }
    g[k] = v;
  }
  QuadratureResult q = integrate(grid, g, false, true);
  double tr = rho.norm();
  double lower = tr - g.front();
  double value = tr * std::log(1.0 / grid.t_min) - q.value + lower;
  // The linear tail model is off by at most tr x_max^2 / 2.
  double err = q.error_estimate + 0.5 * tr * x_max * x_max + 1e-14 * std::abs(value);
  DivergenceResult r{value, value - err, value + err, {}};
  r.diagnostics["interior"] = q.interior;
  r.diagnostics["upper_tail"] = q.upper_tail;
  r.diagnostics["lower_correction"] = lower;
  r.diagnostics["quadrature_error"] = q.error_estimate;
  r.diagnostics["t_min_used"] = grid.t_min;
  return r;
}

double phi_objective(const State& rho, const State& sigma, const ComplexMatrix& x, double t) {
  check_pair(rho, sigma, "phi_objective");
  check_t(t, "phi_objective");
  ComplexMatrix y = ComplexMatrix::Identity(rho.dim(), rho.dim()) - x;
  ComplexMatrix a = matrix_power(rho.density(), 0.5);
  ComplexMatrix b = matrix_power(sigma.density(), 0.5);
  double n = trace_norm(a * y.adjoint() * b);
  return trace_product(rho.density(), ComplexMatrix(x.adjoint() * x)).real() + n * n / t;
}

PhiNode phi_per_t_minimizer(const State& rho, const State& sigma, double t, const MatrixAlgebra* alg,
                            const ComplexMatrix* init) {
  check_pair(rho, sigma, "phi_per_t_minimizer");
  MatrixAlgebra a = optimization_algebra(rho, sigma, alg);
  PhiSolver solver(rho, sigma, a);
  RealVector warm;
  RealVector* warm_ptr = nullptr;
  if (init != nullptr) {
    std::vector<ComplexMatrix> hb = a.hermitian_basis();
    warm.resize(static_cast<Index>(hb.size()));
    for (std::size_t k = 0; k < hb.size(); ++k) warm(static_cast<Index>(k)) = trace_product(hb[k], *init).real();
    warm_ptr = &warm;
  }
  return solver.solve(t, warm_ptr);
}

VariationalPath phi_path(const State& rho, const State& sigma, const std::vector<double>& nodes,
                         const PhiSolverOptions& opts) {
  check_pair(rho, sigma, "phi_path");
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    check_t(nodes[k], "phi_path");
    if (k > 0 && !(nodes[k] > nodes[k - 1])) throw InvalidInput("phi_path: nodes must increase");
  }
  MatrixAlgebra a = optimization_algebra(rho, sigma, opts.algebra);
  PhiSolver solver(rho, sigma, a);
  VariationalPath path;
  path.fidelity = solver.fidelity();
  path.algebra_dim = solver.algebra_dim();
  RealVector warm;
  for (double t : nodes) {
    PhiNode n = solver.solve(t, &warm, opts.certify);
    path.t.push_back(t);
    path.value.push_back(n.value);
    path.dual_lower.push_back(n.dual_lower);
    path.iterations.push_back(n.iterations);
    path.total_iterations += n.iterations;
    if (n.closed_form) ++path.closed_form_nodes;
    if (opts.keep_minimizers) path.x.push_back(n.x);
  }
  return path;
}

double clamp_order(double s) {
  if (!(s > 0.5 && s < 1.0)) {
    std::ostringstream os;
    os << "generalized_fidelity: order s = " << s << " outside (1/2, 1)";
    throw InvalidInput(os.str());
  }
  return std::clamp(s, 0.501, 0.999);
}

DivergenceResult generalized_fidelity_from_path(const VariationalPath& path, const State& rho,
                                                const State& sigma, double s,
                                                const GridOptions& opts) {
  double s_used = clamp_order(s);
  double alpha = (1.0 - s_used) / s_used;
  QuadratureGrid grid = build_grid(alpha, opts);
  if (grid.size() != path.size()) throw InvalidInput("generalized_fidelity: path does not match grid");

  double f = path.fidelity;
  double upper = f > 0.0 ? -(s_used / (1.0 - s_used)) * std::log(f * f) : kInf;
  double neg_log_f2 = f > 0.0 ? -std::log(f * f) : kInf;
  double ds = sandwiched_renyi(rho, sigma, s_used).value;
  if (f == 0.0) {
    DivergenceResult r{kInf, kInf, kInf, {}};
    r.diagnostics["fidelity"] = 0.0;
    return r;
  }
  double cst = std::sin(std::numbers::pi * alpha) / std::numbers::pi;
  double pref = s_used / (s_used - 1.0);
  QuadratureResult primal = integrate(grid, path.value);
  QuadratureResult dual = integrate(grid, path.dual_lower);
  double value = pref * std::log(cst * primal.value);
  double dual_upper = pref * std::log(cst * dual.value);

  DivergenceResult r;
  r.value = value;
  r.lower = std::max({value, ds, neg_log_f2});
  r.upper = upper;
  r.diagnostics["s_used"] = s_used;
  r.diagnostics["dual_upper"] = dual_upper;
  r.diagnostics["fidelity"] = f;
  r.diagnostics["sandwiched_renyi"] = ds;
  r.diagnostics["quadrature_error"] = std::abs(pref) * primal.error_estimate / primal.value;
  r.diagnostics["lower_tail"] = primal.lower_tail;
  r.diagnostics["upper_tail"] = primal.upper_tail;
  r.diagnostics["algebra_dim"] = static_cast<double>(path.algebra_dim);
  r.diagnostics["newton_iterations"] = static_cast<double>(path.total_iterations);
  r.diagnostics["closed_form_nodes"] = static_cast<double>(path.closed_form_nodes);
  return r;
}

std::vector<DivergenceResult> generalized_fidelity(const State& rho, const State& sigma,
                                                   const std::vector<double>& s_values,
                                                   const GridOptions& opts,
                                                   const PhiSolverOptions& solver) {
  check_pair(rho, sigma, "generalized_fidelity");
  for (double s : s_values) clamp_order(s);
  QuadratureGrid grid = build_grid(0.5, opts);
  VariationalPath path = phi_path(rho, sigma, grid.nodes, solver);
  std::vector<DivergenceResult> out;
  for (double s : s_values) out.push_back(generalized_fidelity_from_path(path, rho, sigma, s, opts));
  return out;
}

DivergenceResult generalized_fidelity(const State& rho, const State& sigma, double s,
                                      const GridOptions& opts) {
  return generalized_fidelity(rho, sigma, std::vector<double>{s}, opts).front();
}

DivergenceResult generalized_fidelity(const State& rho, const State& sigma, double s,
                                      const QuadratureGrid& grid) {
  double s_used = clamp_order(s);
  if (std::abs(grid.alpha - (1.0 - s_used) / s_used) > 1e-12)
    throw InvalidInput("generalized_fidelity: grid exponent does not match s");
  GridOptions opts{grid.t_min, grid.t_max, static_cast<int>(grid.size())};
  return generalized_fidelity(rho, sigma, s, opts);
}

}  // namespace vnd

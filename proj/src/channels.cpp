#include "vnd/channels.hpp"

#include <cmath>
#include <sstream>

#include "vnd/errors.hpp"
#include "vnd/random.hpp"
#include "vnd/variational.hpp"

namespace vnd {

namespace {

ComplexMatrix unit(Index d, Index i, Index j) {
  ComplexMatrix e = ComplexMatrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

double min_eig(const ComplexMatrix& a) {
  return eig_hermitian(HermitianMatrix::symmetrized(a)).min();
}

// Choi matrix of a Heisenberg-picture map on M_d.
ComplexMatrix choi_of(const std::function<ComplexMatrix(const ComplexMatrix&)>& map, Index d) {
  ComplexMatrix c = ComplexMatrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) c.block(i * d, j * d, d, d) = map(unit(d, i, j));
  return c;
}

}  // namespace

Channel::Channel(std::vector<ComplexMatrix> kraus, bool require_trace_preserving)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw InvalidInput("Channel: no Kraus operators");
  out_dim_ = kraus_.front().rows();
  in_dim_ = kraus_.front().cols();
  if (in_dim_ == 0 || out_dim_ == 0) throw InvalidInput("Channel: empty Kraus operator");
  ComplexMatrix sum = ComplexMatrix::Zero(in_dim_, in_dim_);
  for (const auto& k : kraus_) {
    if (k.rows() != out_dim_ || k.cols() != in_dim_) throw InvalidInput("Channel: Kraus shapes differ");
    if (!k.allFinite()) throw InvalidInput("Channel: non-finite Kraus entry");
    sum.noalias() += k.adjoint() * k;
  }
  trace_defect_ = (sum - ComplexMatrix::Identity(in_dim_, in_dim_)).cwiseAbs().maxCoeff();
  if (require_trace_preserving && trace_defect_ > 1e-10) {
    std::ostringstream os;
    os << "Channel: trace defect " << trace_defect_ << " exceeds 1e-10";
    throw InvalidInput(os.str());
  }
}

Channel Channel::identity(Index d) { return Channel({ComplexMatrix::Identity(d, d)}); }

Channel Channel::pinching(Index d) {
  std::vector<ComplexMatrix> k;
  for (Index i = 0; i < d; ++i) k.push_back(unit(d, i, i));
  return Channel(k);
}

Channel Channel::completely_depolarizing(Index d) {
  std::vector<ComplexMatrix> k;
  double c = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) k.push_back(c * unit(d, i, j));
  return Channel(k);
}

Channel Channel::from_heisenberg(const std::function<ComplexMatrix(const ComplexMatrix&)>& map, Index d) {
  // Choi = sum_a v_a v_a* with v_a[i d + k] = (A_a)_{k i} and map(m) = sum A m A*.
  ComplexMatrix c = choi_of(map, d);
  EigenSystem es = eig_hermitian(HermitianMatrix::symmetrized(c));
  if (es.min() < -1e-9 * std::max(1.0, es.max())) throw NotPositive("Channel: map is not completely positive");
  std::vector<ComplexMatrix> kraus;
  for (Index a = es.values.size() - 1; a >= 0; --a) {
    if (es.values(a) <= es.threshold) continue;
    ComplexMatrix m(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index k = 0; k < d; ++k) m(k, i) = es.vectors(i * d + k, a);
    kraus.push_back(std::sqrt(es.values(a)) * m.adjoint());
  }
  return Channel(kraus, false);
}

ComplexMatrix Channel::schrodinger(const ComplexMatrix& rho) const {
  if (rho.rows() != in_dim_ || rho.cols() != in_dim_) throw InvalidInput("Channel: input has wrong dimension");
  ComplexMatrix out = ComplexMatrix::Zero(out_dim_, out_dim_);
  for (const auto& k : kraus_) out.noalias() += k * rho * k.adjoint();
  return out;
}

ComplexMatrix Channel::heisenberg(const ComplexMatrix& m) const {
  if (m.rows() != out_dim_ || m.cols() != out_dim_) throw InvalidInput("Channel: observable has wrong dimension");
  ComplexMatrix out = ComplexMatrix::Zero(in_dim_, in_dim_);
  for (const auto& k : kraus_) out.noalias() += k.adjoint() * m * k;
  return out;
}

ComplexMatrix Channel::choi() const {
  ComplexMatrix c = ComplexMatrix::Zero(in_dim_ * out_dim_, in_dim_ * out_dim_);
  for (Index i = 0; i < in_dim_; ++i)
    for (Index j = 0; j < in_dim_; ++j)
      c.block(i * out_dim_, j * out_dim_, out_dim_, out_dim_) = schrodinger(unit(in_dim_, i, j));
  return c;
}

Channel random_channel(Index in_dim, Index out_dim, Index kraus_count, std::uint64_t seed) {
  if (in_dim <= 0 || out_dim <= 0 || kraus_count <= 0) throw InvalidInput("random_channel: dimensions must be positive");
  if (out_dim * kraus_count < in_dim) throw InvalidInput("random_channel: out_dim * kraus_count < in_dim");
  Rng rng(seed);
  ComplexMatrix v = haar_isometry(out_dim * kraus_count, in_dim, rng);
  std::vector<ComplexMatrix> kraus;
  for (Index a = 0; a < kraus_count; ++a) kraus.push_back(v.block(a * out_dim, 0, out_dim, in_dim));
  return Channel(kraus);
}

State apply_schrodinger(const Channel& channel, const State& state) {
  return State(HermitianMatrix::symmetrized(channel.schrodinger(state.density())));
}

Channel compose(const Channel& second, const Channel& first) {
  if (second.in_dim() != first.out_dim()) throw InvalidInput("compose: dimension mismatch");
  std::vector<ComplexMatrix> kraus;
  for (const auto& b : second.kraus())
    for (const auto& a : first.kraus()) kraus.push_back(b * a);
  return Channel(kraus, false);
}

ConditionalExpectation make_conditional_expectation(Channel base, MatrixAlgebra source,
                                                    MatrixAlgebra subalgebra) {
  if (base.in_dim() != source.ambient_dim() || base.out_dim() != source.ambient_dim())
    throw InvalidInput("conditional expectation: channel and algebra dimensions differ");
  if (!source.contains(subalgebra)) throw NotSubalgebra("conditional expectation: target is not a subalgebra of the source");
  ConditionalExpectation e{std::move(base), std::move(source), std::move(subalgebra), 0.0, 0.0};
  const auto& mb = e.source.basis();
  const auto& nb = e.subalgebra.basis();
  // The triple check is cubic in the basis sizes; large algebras are probed
  // on a strided subset.
  std::size_t stride_m = std::max<std::size_t>(1, mb.size() / 16);
  std::size_t stride_n = std::max<std::size_t>(1, nb.size() / 8);
  for (std::size_t a = 0; a < mb.size(); a += stride_m) {
    ComplexMatrix em = e.apply(mb[a]);
    e.range_defect = std::max(e.range_defect, (em - e.subalgebra.project(em)).norm() / std::max(1.0, mb[a].norm()));
    e.idempotency_defect = std::max(e.idempotency_defect, (e.apply(em) - em).norm());
    for (std::size_t i = 0; i < nb.size(); i += stride_n)
      for (std::size_t j = 0; j < nb.size(); j += stride_n) {
        ComplexMatrix lhs = e.apply(nb[i] * mb[a] * nb[j]);
        ComplexMatrix rhs = nb[i] * em * nb[j];
        e.bimodule_defect = std::max(e.bimodule_defect, (lhs - rhs).norm());
      }
  }
  for (const auto& n : nb) e.idempotency_defect = std::max(e.idempotency_defect, (e.apply(n) - n).norm());
  if (e.range_defect > 1e-8) {
    std::ostringstream os;
    os << "conditional expectation: range defect " << e.range_defect;
    throw InvalidInput(os.str());
  }
  if (e.bimodule_defect > 1e-8) {
    std::ostringstream os;
    os << "conditional expectation: bimodule defect " << e.bimodule_defect;
    throw InvalidInput(os.str());
  }
  if (e.idempotency_defect > 1e-10) {
    std::ostringstream os;
    os << "conditional expectation: idempotency defect " << e.idempotency_defect;
    throw InvalidInput(os.str());
  }
  return e;
}

ConditionalExpectation trace_conditional_expectation(const MatrixAlgebra& from, const MatrixAlgebra& to) {
  if (from.ambient_dim() != to.ambient_dim()) throw InvalidInput("trace_conditional_expectation: ambient dimensions differ");
  for (const auto& b : to.basis()) {
    double r = from.membership_residual(b);
    if (r > 1e-9) {
      std::ostringstream os;
      os << "trace_conditional_expectation: target not contained in source (residual " << r << ")";
      throw NotSubalgebra(os.str());
    }
  }
  if (!to.contains_identity()) throw NotSubalgebra("trace_conditional_expectation: target is not unital");
  Channel base = Channel::from_heisenberg([&to](const ComplexMatrix& m) { return to.project(m); }, to.ambient_dim());
  return make_conditional_expectation(std::move(base), from, to);
}

ConditionalExpectation group_average_expectation(const std::vector<ComplexMatrix>& rep,
                                                 const MatrixAlgebra& ambient) {
  if (rep.empty()) throw NotAGroup("group_average_expectation: empty representation");
  const Index d = ambient.ambient_dim();
  const double dd = static_cast<double>(d);
  for (const auto& u : rep) {
    if (u.rows() != d || u.cols() != d) throw InvalidInput("group_average_expectation: unitary has wrong shape");
    if ((u.adjoint() * u - ComplexMatrix::Identity(d, d)).norm() > 1e-9)
      throw NotAGroup("group_average_expectation: element is not unitary");
  }
  // Closure up to phases: |Tr(U_k* V)| = d identifies V with U_k.
  auto find = [&](const ComplexMatrix& v) {
    for (std::size_t k = 0; k < rep.size(); ++k)
      if (std::abs(trace_product(rep[k].adjoint(), v)) > dd * (1.0 - 1e-9)) return true;
    return false;
  };
  for (const auto& u : rep) {
    if (!find(u.adjoint())) throw NotAGroup("group_average_expectation: not closed under inverses");
    for (const auto& v : rep)
      if (!find(u * v)) throw NotAGroup("group_average_expectation: not closed under products");
  }
  std::vector<ComplexMatrix> kraus;
  double c = 1.0 / std::sqrt(static_cast<double>(rep.size()));
  for (const auto& u : rep) kraus.push_back(c * u.adjoint());
  Channel base(kraus);
  std::vector<ComplexMatrix> image;
  for (const auto& b : ambient.basis()) image.push_back(base.heisenberg(b));
  MatrixAlgebra fixed = algebra_from_span(image, d);
  return make_conditional_expectation(std::move(base), ambient, std::move(fixed));
}

State restrict_state(const State& state, const ConditionalExpectation& e) {
  return apply_schrodinger(e.base, state);
}

IndexResult pimsner_popa_index(const ConditionalExpectation& e, std::uint64_t sampler_seed, int sampler_count) {
  const Index d = e.base.in_dim();
  ComplexMatrix ce = choi_of([&e](const ComplexMatrix& m) { return e.apply(m); }, d);
  ComplexMatrix cid = choi_of([](const ComplexMatrix& m) { return m; }, d);
  auto probe = [&](double lambda) { return min_eig(lambda * ce - cid); };

  IndexResult r;
  // Feasibility is tested with a roundoff allowance; the interval is closed
  // to near machine precision.
  const double tol = 1e-13;
  const double width = 4e-15;
  double lo = 1.0, hi = static_cast<double>(d * d);
  double at_lo = probe(lo);
  r.history.emplace_back(lo, at_lo);
  if (at_lo >= -tol) {
    hi = lo;
  } else {
    double at_hi = probe(hi);
    r.history.emplace_back(hi, at_hi);
    if (at_hi < -tol) {
      r.finite = false;
      r.index = kInf;
      r.min_eig_at_index = at_hi;
      return r;
    }
    while (hi - lo > width * hi) {
      double mid = 0.5 * (lo + hi);
      double v = probe(mid);
      r.history.emplace_back(mid, v);
      ++r.bisection_steps;
      if (v >= -tol) hi = mid;
      else lo = mid;
    }
  }
  r.index = hi;
  r.min_eig_at_index = probe(hi);
  r.min_eig_below = probe(hi * (1.0 - 1e-6));

  Rng rng(sampler_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  r.sampler_min_residual = kInf;
  const auto& basis = e.source.basis();
  for (int k = 0; k < sampler_count; ++k) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (const auto& b : basis) {
      double re = normal(rng);
      double im = normal(rng);
      m += cplx(re, im) * b;
    }
    ComplexMatrix mm = m.adjoint() * m;
    double scale = std::max(mm.norm(), 1e-300);
    r.sampler_min_residual = std::min(r.sampler_min_residual, min_eig(r.index * e.apply(mm) - mm) / scale);
  }
  return r;
}

DivergenceSpec DivergenceSpec::parse(const std::string& text) {
  DivergenceSpec spec;
  std::string name = text;
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    name = text.substr(0, colon);
    try {
      spec.s = std::stod(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw InvalidInput("divergence spec: bad order in '" + text + "'");
    }
  }
  if (name == "relative_entropy") spec.kind = DivergenceKind::RelativeEntropy;
  else if (name == "fidelity") spec.kind = DivergenceKind::Fidelity;
  else if (name == "sandwiched_renyi") spec.kind = DivergenceKind::SandwichedRenyi;
  else if (name == "generalized_fidelity") spec.kind = DivergenceKind::GeneralizedFidelity;
  else throw InvalidInput("divergence spec: unknown divergence '" + name + "'");
  bool ordered = spec.kind == DivergenceKind::SandwichedRenyi || spec.kind == DivergenceKind::GeneralizedFidelity;
  if (ordered && colon == std::string::npos) throw InvalidInput("divergence spec: '" + name + "' needs an order, e.g. " + name + ":0.75");
  return spec;
}

std::string DivergenceSpec::name() const {
  std::ostringstream os;
  switch (kind) {
    case DivergenceKind::RelativeEntropy: return "relative_entropy";
    case DivergenceKind::Fidelity: return "fidelity";
    case DivergenceKind::SandwichedRenyi: os << "sandwiched_renyi:" << s; break;
    case DivergenceKind::GeneralizedFidelity: os << "generalized_fidelity:" << s; break;
  }
  return os.str();
}

double evaluate_divergence(const DivergenceSpec& spec, const State& rho, const State& sigma,
                           const GridOptions& grid) {
  switch (spec.kind) {
    case DivergenceKind::RelativeEntropy: return relative_entropy(rho, sigma).value;
    case DivergenceKind::Fidelity: return fidelity(rho, sigma).value;
    case DivergenceKind::SandwichedRenyi: return sandwiched_renyi(rho, sigma, spec.s).value;
    case DivergenceKind::GeneralizedFidelity: {
      PhiSolverOptions solver;
      solver.certify = false;
      return generalized_fidelity(rho, sigma, {spec.s}, grid, solver).front().value;
    }
  }
  return 0.0;
}

DpiReport dpi_harness(const DivergenceSpec& spec, const DpiOptions& opts) {
  if (opts.samples < 0) throw InvalidInput("dpi_harness: negative sample count");
  DpiReport report;
  report.spec = spec;
  for (int i = 0; i < opts.samples; ++i) {
    Rng rng(opts.seed + static_cast<std::uint64_t>(i));
    Index din = 2 + i % 2;
    Index dout = opts.identity_only ? din : 2 + (i / 2) % 2;
    Index kraus = 1 + (i / 4) % 3;
    if (dout * kraus < din) kraus = 2;
    State rho = random_mixed_state(din, rng);
    State sigma = random_mixed_state(din, rng);
    std::uint64_t channel_seed = rng();
    Channel t = opts.identity_only ? Channel::identity(din) : random_channel(din, dout, kraus, channel_seed);
    DpiRow row;
    row.sample = i;
    row.in_dim = din;
    row.out_dim = dout;
    row.pre = evaluate_divergence(spec, rho, sigma, opts.grid);
    row.post = evaluate_divergence(spec, apply_schrodinger(t, rho), apply_schrodinger(t, sigma), opts.grid);
    row.violation = spec.increasing() ? row.pre - row.post : row.post - row.pre;
    report.max_violation = std::max(report.max_violation, row.violation);
    if (spec.hard()) {
      if (row.violation > opts.hard_tol) ++report.hard_violations;
    } else if (row.violation > opts.soft_tol) {
      ++report.soft_violations;
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace vnd

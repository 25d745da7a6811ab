#include "vnd/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vnd/errors.hpp"

namespace vnd {

namespace {

constexpr double kRankTol = 1e-10;

ComplexMatrix unit(Index d, Index i, Index j) {
  ComplexMatrix e = ComplexMatrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

// Incremental Gram-Schmidt in Hilbert-Schmidt space with one
// re-orthogonalization pass.
class SpanBuilder {
 public:
  // Residuals below kRankTol * max(|m|, scale) count as dependent; the scale
  // keeps roundoff-sized elements out of the span.
  explicit SpanBuilder(Index d, double scale = 0.0) : d_(d), scale_(scale) {}

  bool add(const ComplexMatrix& m) { return add(m, scale_); }

  // `bound` is an a priori bound on |m| (e.g. |g|_F for m = g b with |b|_F = 1).
  bool add(const ComplexMatrix& m, double bound) {
    double n0 = m.norm();
    if (n0 == 0.0) return false;
    ComplexMatrix r = m;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis_) r -= trace_product(b.adjoint(), r) * b;
    double n1 = r.norm();
    if (n1 <= kRankTol * std::max(n0, bound)) return false;
    basis_.push_back(r / n1);
    return true;
  }

  std::vector<ComplexMatrix>& basis() { return basis_; }
  Index size() const { return static_cast<Index>(basis_.size()); }
  bool full() const { return size() == d_ * d_; }

 private:
  Index d_;
  double scale_;
  std::vector<ComplexMatrix> basis_;
};

}  // namespace

MatrixAlgebra::MatrixAlgebra(Index ambient_dim, std::vector<ComplexMatrix> generators,
                             std::vector<ComplexMatrix> basis)
    : ambient_dim_(ambient_dim), generators_(std::move(generators)), basis_(std::move(basis)) {
  for (const auto& b : basis_)
    if (b.rows() != ambient_dim_ || b.cols() != ambient_dim_)
      throw InvalidInput("MatrixAlgebra: basis element has wrong shape");
}

MatrixAlgebra MatrixAlgebra::full(Index d) {
  std::vector<ComplexMatrix> basis, gens;
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) basis.push_back(unit(d, i, j));
  for (Index i = 0; i + 1 < d; ++i) gens.push_back(unit(d, i, i + 1));
  for (Index i = 0; i < d; ++i) gens.push_back(unit(d, i, i));
  return MatrixAlgebra(d, gens, basis);
}

MatrixAlgebra MatrixAlgebra::scalars(Index d) {
  ComplexMatrix id = ComplexMatrix::Identity(d, d);
  return MatrixAlgebra(d, {}, {id / std::sqrt(static_cast<double>(d))});
}

MatrixAlgebra MatrixAlgebra::diagonal(Index d) {
  std::vector<ComplexMatrix> basis;
  for (Index i = 0; i < d; ++i) basis.push_back(unit(d, i, i));
  return MatrixAlgebra(d, basis, basis);
}

MatrixAlgebra MatrixAlgebra::tensor(const MatrixAlgebra& a, const MatrixAlgebra& b) {
  std::vector<ComplexMatrix> basis, gens;
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) basis.push_back(kron(x, y));
  ComplexMatrix ia = ComplexMatrix::Identity(a.ambient_dim(), a.ambient_dim());
  ComplexMatrix ib = ComplexMatrix::Identity(b.ambient_dim(), b.ambient_dim());
  for (const auto& g : a.generators()) gens.push_back(kron(g, ib));
  for (const auto& g : b.generators()) gens.push_back(kron(ia, g));
  return MatrixAlgebra(a.ambient_dim() * b.ambient_dim(), gens, basis);
}

ComplexMatrix MatrixAlgebra::project(const ComplexMatrix& m) const {
  ComplexMatrix out = ComplexMatrix::Zero(ambient_dim_, ambient_dim_);
  for (const auto& b : basis_) out += trace_product(b.adjoint(), m) * b;
  return out;
}

double MatrixAlgebra::membership_residual(const ComplexMatrix& m) const {
  double n = m.norm();
  if (n == 0.0) return 0.0;
  return (m - project(m)).norm() / n;
}

bool MatrixAlgebra::contains(const ComplexMatrix& m, double tol) const {
  return membership_residual(m) <= tol;
}

bool MatrixAlgebra::contains(const MatrixAlgebra& other, double tol) const {
  if (other.ambient_dim() != ambient_dim_) return false;
  for (const auto& b : other.basis())
    if (!contains(b, tol)) return false;
  return true;
}

bool MatrixAlgebra::contains_identity(double tol) const {
  return contains(ComplexMatrix::Identity(ambient_dim_, ambient_dim_), tol);
}

std::vector<ComplexMatrix> MatrixAlgebra::hermitian_basis() const {
  std::vector<ComplexMatrix> out;
  const cplx i(0.0, 1.0);
  for (const auto& b : basis_) {
    for (const ComplexMatrix& h : {ComplexMatrix((b + b.adjoint()) / 2.0),
                                   ComplexMatrix((b - b.adjoint()) / (2.0 * i))}) {
      double n0 = h.norm();
      if (n0 == 0.0) continue;
      ComplexMatrix r = h;
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& e : out) r -= trace_product(e, r).real() * e;
      double n1 = r.norm();
      if (n1 > kRankTol * n0) out.push_back(r / n1);
    }
    if (static_cast<Index>(out.size()) == dim()) break;
  }
  return out;
}

double MatrixAlgebra::closure_defect() const {
  double worst = 0.0;
  for (const auto& x : basis_)
    for (const auto& y : basis_) {
      ComplexMatrix p = x * y;
      worst = std::max(worst, (p - project(p)).norm());
    }
  return worst;
}

MatrixAlgebra close_star_algebra(const std::vector<ComplexMatrix>& generators, Index ambient_dim) {
  if (ambient_dim <= 0) throw InvalidInput("close_star_algebra: ambient dimension must be positive");
  std::vector<ComplexMatrix> letters;
  for (const auto& g : generators) {
    if (g.rows() != ambient_dim || g.cols() != ambient_dim)
      throw InvalidInput("close_star_algebra: generator has wrong shape");
    if (!g.allFinite()) throw InvalidInput("close_star_algebra: non-finite generator");
    letters.push_back(g);
    if ((g - g.adjoint()).norm() > 1e-14 * std::max(1.0, g.norm())) letters.push_back(g.adjoint());
  }
  // The span of all words in the letters is closed under left
  // multiplication by letters; grow it breadth first starting from 1.
  SpanBuilder span(ambient_dim);
  span.add(ComplexMatrix::Identity(ambient_dim, ambient_dim));
  for (std::size_t next = 0; next < span.basis().size() && !span.full(); ++next) {
    ComplexMatrix b = span.basis()[next];
    for (const auto& g : letters) {
      span.add(g * b, g.norm());
      if (span.full()) break;
    }
  }
  return MatrixAlgebra(ambient_dim, generators, std::move(span.basis()));
}

MatrixAlgebra commutant(const MatrixAlgebra& alg) {
  const Index d = alg.ambient_dim();
  const Index d2 = d * d;
  std::vector<ComplexMatrix> gens = alg.generators();
  if (gens.empty()) gens = alg.basis();
  // vec(XG - GX) = (G^T (x) 1 - 1 (x) G) vec(X) with column-major vec.
  ComplexMatrix gram = ComplexMatrix::Zero(d2, d2);
  ComplexMatrix id = ComplexMatrix::Identity(d, d);
  for (const auto& g : gens) {
    for (const ComplexMatrix& h : {g, ComplexMatrix(g.adjoint())}) {
      ComplexMatrix l = kron(h.transpose(), id) - kron(id, h);
      gram.noalias() += l.adjoint() * l;
    }
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram);
  const RealVector& ev = solver.eigenvalues();
  double tol = kRankTol * std::max(1.0, ev.cwiseAbs().maxCoeff());
  SpanBuilder span(d);
  span.add(id);
  for (Index k = 0; k < d2; ++k) {
    if (ev(k) > tol) break;
    ComplexMatrix x = Eigen::Map<const ComplexMatrix>(solver.eigenvectors().col(k).data(), d, d);
    span.add(x);
  }
  std::vector<ComplexMatrix> basis = std::move(span.basis());
  return MatrixAlgebra(d, basis, basis);
}

MatrixAlgebra algebra_from_span(const std::vector<ComplexMatrix>& elements, Index ambient_dim) {
  double scale = 0.0;
  for (const auto& e : elements) scale = std::max(scale, e.norm());
  SpanBuilder span(ambient_dim, scale);
  span.add(ComplexMatrix::Identity(ambient_dim, ambient_dim));
  for (const auto& e : elements) {
    if (e.rows() != ambient_dim || e.cols() != ambient_dim)
      throw InvalidInput("algebra_from_span: element has wrong shape");
    span.add(e);
  }
  std::vector<ComplexMatrix> basis = std::move(span.basis());
  return MatrixAlgebra(ambient_dim, basis, basis);
}

State::State(const HermitianMatrix& density) : rho_(density) {
  EigenSystem es = eig_hermitian(rho_);
  if (es.min() < -1e-10 * std::max(1.0, es.max())) {
    std::ostringstream os;
    os << "State: density has eigenvalue " << es.min();
    throw NotPositive(os.str());
  }
}

State State::from_vector(const ComplexVector& psi) {
  if (psi.size() == 0 || !psi.allFinite()) throw InvalidInput("State: bad state vector");
  return State(HermitianMatrix::symmetrized(psi * psi.adjoint()));
}

State State::maximally_mixed(Index d) {
  return State(HermitianMatrix::symmetrized(ComplexMatrix::Identity(d, d) / static_cast<double>(d)));
}

bool State::faithful() const { return eig_hermitian(rho_).support_rank == dim(); }

}  // namespace vnd

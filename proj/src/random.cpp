#include "vnd/random.hpp"

#include <cmath>

#include "vnd/errors.hpp"

namespace vnd {

ComplexMatrix ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      double re = normal(rng);
      double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  return g;
}

ComplexMatrix haar_isometry(Index rows, Index cols, Rng& rng) {
  if (rows < cols) throw InvalidInput("haar_isometry: rows must be >= cols");
  ComplexMatrix g = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  ComplexMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (Index k = 0; k < cols; ++k) {
    double a = std::abs(r(k, k));
    if (a > 0.0) q.col(k) *= r(k, k) / a;
  }
  return q;
}

ComplexMatrix haar_unitary(Index d, Rng& rng) { return haar_isometry(d, d, rng); }

ComplexVector random_pure_vector(Index d, Rng& rng) {
  ComplexVector v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

State random_mixed_state(Index d, Rng& rng, Index rank) {
  if (rank <= 0) rank = d;
  ComplexMatrix g = ginibre(d, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return State(HermitianMatrix::symmetrized(rho));
}

State random_pure_state(Index d, Rng& rng) { return State::from_vector(random_pure_vector(d, rng)); }

State random_diagonal_state(Index d, Rng& rng) {
  std::exponential_distribution<double> ex(1.0);
  RealVector p(d);
  for (Index i = 0; i < d; ++i) p(i) = ex(rng);
  p /= p.sum();
  return State(HermitianMatrix::diagonal(p));
}

}  // namespace vnd

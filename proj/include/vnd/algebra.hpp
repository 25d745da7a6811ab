#pragma once

#include <vector>

#include "vnd/matrixkit.hpp"

namespace vnd {

// Unital *-subalgebra of M_d, stored as a Hilbert-Schmidt orthonormal basis
// (<A,B> = Tr A*B).  Generators are kept for commutant computations.
class MatrixAlgebra {
 public:
  MatrixAlgebra() = default;
  MatrixAlgebra(Index ambient_dim, std::vector<ComplexMatrix> generators,
                std::vector<ComplexMatrix> basis);

  static MatrixAlgebra full(Index d);
  static MatrixAlgebra scalars(Index d);
  static MatrixAlgebra diagonal(Index d);
  // a (x) b acting on C^da (x) C^db.
  static MatrixAlgebra tensor(const MatrixAlgebra& a, const MatrixAlgebra& b);

  Index ambient_dim() const { return ambient_dim_; }
  Index dim() const { return static_cast<Index>(basis_.size()); }
  const std::vector<ComplexMatrix>& generators() const { return generators_; }
  const std::vector<ComplexMatrix>& basis() const { return basis_; }

  // Orthogonal projection in Hilbert-Schmidt space; this is the
  // trace-preserving conditional expectation onto the algebra.
  ComplexMatrix project(const ComplexMatrix& m) const;
  // ||m - P m||_F / ||m||_F (0 for m = 0).
  double membership_residual(const ComplexMatrix& m) const;
  bool contains(const ComplexMatrix& m, double tol = 1e-9) const;
  bool contains(const MatrixAlgebra& other, double tol = 1e-9) const;
  bool contains_identity(double tol = 1e-9) const;

  // Hermitian orthonormal basis of the same (complex) span.
  std::vector<ComplexMatrix> hermitian_basis() const;

  // max ||P(b_i b_j) - b_i b_j||_F over basis pairs.
  double closure_defect() const;

 private:
  Index ambient_dim_ = 0;
  std::vector<ComplexMatrix> generators_;
  std::vector<ComplexMatrix> basis_;
};

// Smallest unital *-algebra containing the generators (empty list gives the
// scalars).  Linear dependence is decided with a relative tolerance 1e-10.
MatrixAlgebra close_star_algebra(const std::vector<ComplexMatrix>& generators, Index ambient_dim);

MatrixAlgebra commutant(const MatrixAlgebra& alg);

// Orthonormalized span of elements already known to form a unital
// *-algebra (e.g. the range of a conditional expectation).
MatrixAlgebra algebra_from_span(const std::vector<ComplexMatrix>& elements, Index ambient_dim);

// Positive functional on M_d given by its density.  norm() is the trace,
// subnormalized states are allowed.
class State {
 public:
  State() = default;
  explicit State(const HermitianMatrix& density);
  explicit State(const ComplexMatrix& density) : State(HermitianMatrix(density)) {}
  static State from_vector(const ComplexVector& psi);
  static State maximally_mixed(Index d);

  Index dim() const { return rho_.dim(); }
  const ComplexMatrix& density() const { return rho_.matrix(); }
  const HermitianMatrix& hermitian() const { return rho_; }
  double norm() const { return rho_.trace(); }
  bool faithful() const;

 private:
  HermitianMatrix rho_;
};

}  // namespace vnd

#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace vnd {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Hermitian matrix, stored symmetrized.  Construction from a general matrix
// checks that the anti-Hermitian part is below dim * 1e-12 (relative to the
// largest entry) and then keeps (A + A*)/2.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& a);

  // Symmetrize without the defect check.
  static HermitianMatrix symmetrized(const ComplexMatrix& a);
  static HermitianMatrix identity(Index dim);
  static HermitianMatrix diagonal(const RealVector& d);

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  double hermiticity_defect() const { return defect_; }
  double trace() const { return m_.trace().real(); }

 private:
  ComplexMatrix m_;
  double defect_ = 0.0;
};

// Eigenvalues ascending; eigenvectors phase-normalized so that the first
// component with modulus above 1e-12 is real and positive.
struct EigenSystem {
  RealVector values;
  ComplexMatrix vectors;
  Index support_rank = 0;
  double threshold = 0.0;

  // Apply f to the eigenvalues above the support threshold, 0 elsewhere.
  ComplexMatrix apply(const std::function<double(double)>& f) const;
  ComplexMatrix support_projection() const;
  double min() const { return values.size() ? values(0) : 0.0; }
  double max() const { return values.size() ? values(values.size() - 1) : 0.0; }
};

double default_support_threshold(const RealVector& values);

EigenSystem eig_hermitian(const HermitianMatrix& a);
EigenSystem eig_hermitian(const ComplexMatrix& a);

// A^p on the support of A.  Negative exponents give the generalized inverse
// power.  Throws NotPositive when the minimal eigenvalue is below -1e-10.
HermitianMatrix matrix_power(const HermitianMatrix& a, double exponent);
ComplexMatrix matrix_power(const ComplexMatrix& a, double exponent);

// log on the support, 0 on the kernel.
ComplexMatrix matrix_log(const ComplexMatrix& a);

double trace_norm(const ComplexMatrix& a);
double operator_norm(const ComplexMatrix& a);

// threshold < 0 selects the default support threshold.
ComplexMatrix support_projection(const HermitianMatrix& a, double threshold = -1.0);

// Tr(a b) without forming the product.
cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

// ||a||_F, relative comparisons in the rest of the library use this.
inline double hs_norm(const ComplexMatrix& a) { return a.norm(); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace vnd

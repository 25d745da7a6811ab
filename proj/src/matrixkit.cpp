#include "vnd/matrixkit.hpp"

#include <cmath>
#include <sstream>

#include "vnd/errors.hpp"

namespace vnd {

namespace {

void require_square_finite(const ComplexMatrix& a, const char* what) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << a.rows() << "x" << a.cols();
    throw InvalidInput(os.str());
  }
  if (!a.allFinite()) throw InvalidInput(std::string(what) + ": non-finite entry");
}

void normalize_phases(ComplexMatrix& v) {
  for (Index j = 0; j < v.cols(); ++j) {
    for (Index i = 0; i < v.rows(); ++i) {
      double r = std::abs(v(i, j));
      if (r > 1e-12) {
        v.col(j) *= std::conj(v(i, j)) / r;
        v(i, j) = cplx(v(i, j).real(), 0.0);
        break;
      }
    }
  }
}

}  // namespace

HermitianMatrix::HermitianMatrix(const ComplexMatrix& a) {
  require_square_finite(a, "HermitianMatrix");
  ComplexMatrix anti = a - a.adjoint();
  double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  defect_ = anti.cwiseAbs().maxCoeff() / 2.0;
  if (defect_ > 1e-12 * static_cast<double>(a.rows()) * scale) {
    std::ostringstream os;
    os << "HermitianMatrix: hermiticity defect " << defect_ << " exceeds tolerance";
    throw InvalidInput(os.str());
  }
  m_ = (a + a.adjoint()) / 2.0;
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& a) {
  require_square_finite(a, "HermitianMatrix");
  HermitianMatrix h;
  h.defect_ = (a - a.adjoint()).cwiseAbs().maxCoeff() / 2.0;
  h.m_ = (a + a.adjoint()) / 2.0;
  return h;
}

HermitianMatrix HermitianMatrix::identity(Index dim) {
  return symmetrized(ComplexMatrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& d) {
  return symmetrized(d.cast<cplx>().asDiagonal().toDenseMatrix());
}

double default_support_threshold(const RealVector& values) {
  if (values.size() == 0) return 0.0;
  return 1e-12 * static_cast<double>(values.size()) * values.cwiseAbs().maxCoeff();
}

ComplexMatrix EigenSystem::apply(const std::function<double(double)>& f) const {
  const Index n = values.size();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    if (values(k) <= threshold) continue;
    out.noalias() += f(values(k)) * vectors.col(k) * vectors.col(k).adjoint();
  }
  return out;
}

ComplexMatrix EigenSystem::support_projection() const {
  return apply([](double) { return 1.0; });
}

EigenSystem eig_hermitian(const HermitianMatrix& a) { return eig_hermitian(a.matrix()); }

EigenSystem eig_hermitian(const ComplexMatrix& a) {
  require_square_finite(a, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) throw InvalidInput("eig_hermitian: eigensolver failed");
  EigenSystem es;
  es.values = solver.eigenvalues();
  es.vectors = solver.eigenvectors();
  normalize_phases(es.vectors);
  es.threshold = default_support_threshold(es.values);
  es.support_rank = (es.values.array() > es.threshold).count();
  return es;
}

HermitianMatrix matrix_power(const HermitianMatrix& a, double exponent) {
  return HermitianMatrix::symmetrized(matrix_power(a.matrix(), exponent));
}

ComplexMatrix matrix_power(const ComplexMatrix& a, double exponent) {
  EigenSystem es = eig_hermitian(a);
  if (es.min() < -1e-10 * std::max(1.0, es.max())) {
    std::ostringstream os;
    os << "matrix_power: minimal eigenvalue " << es.min() << " below -1e-10";
    throw NotPositive(os.str());
  }
  if (exponent == 0.0) return es.support_projection();
  return es.apply([exponent](double x) { return std::pow(x, exponent); });
}

ComplexMatrix matrix_log(const ComplexMatrix& a) {
  EigenSystem es = eig_hermitian(a);
  if (es.min() < -1e-10 * std::max(1.0, es.max())) throw NotPositive("matrix_log: matrix is not positive");
  return es.apply([](double x) { return std::log(x); });
}

double trace_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues().sum();
}

double operator_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

ComplexMatrix support_projection(const HermitianMatrix& a, double threshold) {
  EigenSystem es = eig_hermitian(a);
  if (threshold >= 0.0) es.threshold = threshold;
  return es.support_projection();
}

cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.transpose().array() * b.array()).sum();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace vnd

#pragma once

#include <cmath>

#include "vnd/algebra.hpp"
#include "vnd/random.hpp"

namespace vt {

using vnd::ComplexMatrix;
using vnd::cplx;

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline vnd::State diag_state(std::initializer_list<double> p) {
  vnd::RealVector v(static_cast<vnd::Index>(p.size()));
  vnd::Index i = 0;
  for (double x : p) v(i++) = x;
  return vnd::State(vnd::HermitianMatrix::diagonal(v));
}

inline vnd::ComplexVector bell(vnd::Index n) {
  vnd::ComplexVector psi = vnd::ComplexVector::Zero(n * n);
  for (vnd::Index i = 0; i < n; ++i) psi(i * n + i) = 1.0 / std::sqrt(static_cast<double>(n));
  return psi;
}

}  // namespace vt

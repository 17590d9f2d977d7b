// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#include "uniest/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "uniest/errors.hpp"

namespace uniest {

CMatrix expm(const CMatrix& a) {
  if (a.rows() != a.cols()) throw DomainError("expm: matrix must be square");
  return a.exp();
}

CMatrix expm_frechet(const CMatrix& a, const CMatrix& e) {
  const Index n = a.rows();
  if (a.cols() != n || e.rows() != n || e.cols() != n) {
    throw DomainError("expm_frechet: operands must be square and of equal size");
  }
  CMatrix block = CMatrix::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = a;
  block.topRightCorner(n, n) = e;
  block.bottomRightCorner(n, n) = a;
  const CMatrix ex = block.exp();
  return ex.topRightCorner(n, n);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

CMatrix outer(const CVector& ket, const CVector& bra) { return ket * bra.adjoint(); }

CMatrix projector(const CVector& ket) { return ket * ket.adjoint(); }

CMatrix identity(Index n) { return CMatrix::Identity(n, n); }

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_abs(const RMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double hermiticity_residual(const CMatrix& m) { return max_abs(CMatrix(m - m.adjoint())); }

Complex trace_product(const CMatrix& a, const CMatrix& b) {
  // tr(ab) = sum_ij a_ij b_ji
  return a.cwiseProduct(b.transpose()).sum();
}

double min_eigenvalue(const RMatrix& symmetric) {
  if (symmetric.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<RMatrix> es(symmetric, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double min_eigenvalue_hermitian(const CMatrix& hermitian) {
  if (hermitian.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

RVector eigenvalues_symmetric(const RMatrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(symmetric, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

int numerical_rank(const RMatrix& symmetric, double rel_tol) {
  if (symmetric.size() == 0) return 0;
  const RVector ev = eigenvalues_symmetric(symmetric);
  const double top = ev.cwiseAbs().maxCoeff();
  if (top == 0.0) return 0;
  return static_cast<int>((ev.array() > rel_tol * top).count());
}

RMatrix inverse_sqrt_spd(const RMatrix& a) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(a);
  const RVector& ev = es.eigenvalues();
  if (ev.minCoeff() <= 0.0) {
    throw SingularMatrixError("inverse_sqrt_spd: matrix is not positive definite", ev.minCoeff());
  }
  return es.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
}

CMatrix sqrt_psd(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
  const RVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix inverse_sqrt_hpd(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
  const RVector& ev = es.eigenvalues();
  if (ev.minCoeff() <= 0.0) {
    throw SingularMatrixError("inverse_sqrt_hpd: matrix is not positive definite", ev.minCoeff());
  }
  return es.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();
}

CVector flatten_row_major(const CMatrix& m) {
  CVector v(m.size());
  for (Index k = 0; k < m.rows(); ++k) {
    for (Index l = 0; l < m.cols(); ++l) v(k * m.cols() + l) = m(k, l);
  }
  return v;
}

CMatrix unflatten_row_major(const CVector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw DomainError("unflatten_row_major: size mismatch");
  CMatrix m(rows, cols);
  for (Index k = 0; k < rows; ++k) {
    for (Index l = 0; l < cols; ++l) m(k, l) = v(k * cols + l);
  }
  return m;
}

}  // namespace uniest

// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "uniest/types.hpp"

namespace uniest {

/// Matrix exponential (scaling and squaring with a Pade approximant).
CMatrix expm(const CMatrix& a);

/// Directional (Frechet) derivative of exp at \p a along \p e, read off the
/// upper-right block of exp([[a, e], [0, a]]).
CMatrix expm_frechet(const CMatrix& a, const CMatrix& e);

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix outer(const CVector& ket, const CVector& bra);
CMatrix projector(const CVector& ket);
CMatrix identity(Index n);

double max_abs(const CMatrix& m);
double max_abs(const RMatrix& m);
double hermiticity_residual(const CMatrix& m);

/// tr(a b) without forming the product.
Complex trace_product(const CMatrix& a, const CMatrix& b);

double min_eigenvalue(const RMatrix& symmetric);
double min_eigenvalue_hermitian(const CMatrix& hermitian);
RVector eigenvalues_symmetric(const RMatrix& symmetric);

/// Numerical rank of a symmetric PSD matrix: eigenvalues above rel_tol * max.
int numerical_rank(const RMatrix& symmetric, double rel_tol = 1e-8);

/// a^{-1/2} of a symmetric positive definite matrix.
RMatrix inverse_sqrt_spd(const RMatrix& a);

/// Hermitian PSD square root and inverse square root.
CMatrix sqrt_psd(const CMatrix& a);
CMatrix inverse_sqrt_hpd(const CMatrix& a);

/// Row-major flattening: amplitude matrix R_{kl} -> sum_kl R_kl |k>|l>.
CVector flatten_row_major(const CMatrix& m);
CMatrix unflatten_row_major(const CVector& v, Index rows, Index cols);

}  // namespace uniest

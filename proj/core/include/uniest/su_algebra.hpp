// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "uniest/tolerances.hpp"
#include "uniest/types.hpp"

namespace uniest {

/// Orthonormal basis of su(d): traceless Hermitian T_a with tr(T_a T_b) = delta_ab.
///
/// Ordering: the off-diagonal pairs (k > l, s = 0, 1) come first, iterating k
/// then l then s; the d - 1 diagonal generators follow. For d = 2 this gives
/// (sigma_x, sigma_y, sigma_z) / sqrt(2).
class GeneratorBasis {
 public:
  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return generators_.size(); }
  const CMatrix& operator[](std::size_t a) const { return generators_[a]; }
  const std::vector<CMatrix>& generators() const noexcept { return generators_; }

  /// Rows are c_m for m = 1..d-1; columns run over the basis index k.
  const RMatrix& diagonal_coefficients() const noexcept { return diagonal_; }

  /// sum_a coords_a T_a.
  CMatrix combine(const RVector& coords) const;

  /// Components x_a = tr(T_a h) of a Hermitian matrix.
  RVector components(const CMatrix& hermitian) const;

  friend GeneratorBasis gellmann_basis(int d);

 private:
  int dim_ = 0;
  std::vector<CMatrix> generators_;
  RMatrix diagonal_;
};

/// Generalized Gell-Mann basis: T_kls = i^s (|k><l| + (-1)^s |l><k|) / sqrt(2)
/// and diagonal T_m with c_m = (1, ..., 1, -m, 0, ..., 0) / sqrt(m (m + 1)).
/// Throws DomainError for d < 2.
GeneratorBasis gellmann_basis(int d);

/// exp(i sum_a coords_a T_a).
CMatrix unitary_exp(const GeneratorBasis& basis, const RVector& coords);

/// dU/dcoords_a for every a, via the augmented-block exponential.
/// Largest minus smallest eigenvalue of sum_a x_a T_a.
double generator_spread(const GeneratorBasis& basis, const RVector& coords);

std::vector<CMatrix> unitary_derivatives_exp(const GeneratorBasis& basis, const RVector& coords);

/// A unitary together with its partial derivatives with respect to a chart.
struct UnitaryJet {
  CMatrix value;
  std::vector<CMatrix> partials;
};

/// Pauli matrices sigma_1, sigma_2, sigma_3.
const std::array<CMatrix, 3>& pauli();

/// Unit vector n(theta, phi) = (sin t cos p, sin t sin p, cos t).
Eigen::Vector3d polar_axis(double theta, double phi);

/// True when alpha and theta both lie in (tol, pi - tol).
bool in_su2_domain(double alpha, double theta, const Tolerances& tol = default_tolerances());

/// Closed form U = cos(alpha) 1 + i sin(alpha) n.sigma and its partials in
/// (alpha, theta, phi). No domain check; see unitary_su2.
UnitaryJet su2_polar(double alpha, double theta, double phi);

/// su2_polar restricted to the open chart domain; throws DomainError near
/// alpha or theta in {0, pi}, where the quantum Fisher matrix is singular.
UnitaryJet unitary_su2(double alpha, double theta, double phi,
                       const Tolerances& tol = default_tolerances());

/// Exponential-chart coordinates of the d = 2 polar point: sqrt(2) alpha n.
RVector su2_polar_to_exp(double alpha, double theta, double phi);

/// Jacobian d(exp coords)/d(alpha, theta, phi) of su2_polar_to_exp.
Eigen::Matrix3d su2_polar_to_exp_jacobian(double alpha, double theta, double phi);

}  // namespace uniest

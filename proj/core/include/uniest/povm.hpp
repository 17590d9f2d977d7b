// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "uniest/random.hpp"
#include "uniest/tolerances.hpp"
#include "uniest/types.hpp"

namespace uniest {

/// weight * |a><a| (x) |b><b| with unit kets a and b.
struct ProductTerm {
  double weight = 0.0;
  CVector a;
  CVector b;

  CMatrix matrix() const;
};

/// One POVM element. When \c product is non-empty the element equals the sum
/// of its product terms; a single term marks a rank-one product element.
struct PovmElement {
  CMatrix matrix;
  std::vector<ProductTerm> product;

  bool is_product() const noexcept { return !product.empty(); }
};

/// Finite list of PSD operators on C^dim. Construction does not validate;
/// use validate() to obtain residuals.
class Povm {
 public:
  Povm() = default;
  Povm(Index dim, std::vector<PovmElement> elements);

  static Povm from_matrices(std::vector<CMatrix> matrices);

  Index dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const PovmElement& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<PovmElement>& elements() const noexcept { return elements_; }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  /// True when every element carries a product decomposition.
  bool is_separable() const;

 private:
  Index dim_ = 0;
  std::vector<PovmElement> elements_;
};

struct PovmDiagnostics {
  double completeness_residual = 0.0;  // max |sum_x M_x - 1|
  double min_eigenvalue = 0.0;         // over all elements
  double hermiticity_residual = 0.0;   // max |M_x - M_x^dagger|
  double product_residual = 0.0;       // max |M_x - sum of its product terms|

  bool ok(const Tolerances& tol = default_tolerances()) const;
};

PovmDiagnostics validate(const Povm& povm);

/// The four Bell projectors on C^2 (x) C^2, in the order
/// (|00>-|11>), (|00>+|11>), (|01>+|10>), (|01>-|10>) (each over sqrt 2).
Povm bell_basis();

/// {M_k, 1 - M_k} for Bell element k in 1..4.
Povm reduced_bell(int k);

/// {M_k, M_l, 1 - M_k - M_l} for Bell elements k != l.
Povm linear_optics_bell(int k, int l);

/// Union of the elements of \p povms, each scaled by its weight.
/// Weights must be positive and sum to one.
Povm time_shared(std::span<const Povm> povms, std::span<const double> weights);

/// Uniform time-share over the nine product von Neumann bases sigma_i (x) sigma_j.
Povm local_spin_povm();

/// weight * {|u_a e_i> <...| (x) |u_b e_j><...|}: a product orthonormal basis.
Povm product_basis_povm(const CMatrix& ua, const CMatrix& ub, double weight = 1.0);

/// Uniform time-share over n_bases product bases with Haar-random local unitaries.
Povm random_product_povm(int d, int n_bases, std::uint64_t seed);

/// Generic POVM with n full-rank elements: S^{-1/2} A_i S^{-1/2}, A_i Wishart.
Povm random_povm(Index dim, int n, Rng& rng);

/// Merges elements i and j into one, concatenating product decompositions.
Povm merge_elements(const Povm& povm, std::size_t i, std::size_t j);

/// Splits every element into its rank-one product terms. Throws DomainError
/// when an element carries no product decomposition.
Povm refine_separable(const Povm& povm);

/// (V (x) 1) M (V (x) 1)^dagger for every element; product metadata follows.
Povm conjugate_first_factor(const Povm& povm, const CMatrix& v);

}  // namespace uniest

// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#include "uniest/povm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "uniest/errors.hpp"
#include "uniest/linalg.hpp"

namespace uniest {

CMatrix ProductTerm::matrix() const { return weight * kron(projector(a), projector(b)); }

Povm::Povm(Index dim, std::vector<PovmElement> elements) : dim_(dim), elements_(std::move(elements)) {
  for (const PovmElement& e : elements_) {
    if (e.matrix.rows() != dim_ || e.matrix.cols() != dim_) {
      throw DomainError("Povm: element of size " + std::to_string(e.matrix.rows()) + "x" +
                        std::to_string(e.matrix.cols()) + " in a dimension-" + std::to_string(dim_) + " POVM");
    }
    for (const ProductTerm& t : e.product) {
      if (t.a.size() * t.b.size() != dim_) throw DomainError("Povm: product term kets do not match the dimension");
    }
  }
}

Povm Povm::from_matrices(std::vector<CMatrix> matrices) {
  if (matrices.empty()) throw DomainError("Povm: no elements");
  const Index dim = matrices.front().rows();
  std::vector<PovmElement> elements;
  elements.reserve(matrices.size());
  for (CMatrix& m : matrices) elements.push_back({std::move(m), {}});
  return Povm(dim, std::move(elements));
}

bool Povm::is_separable() const {
  return !elements_.empty() &&
         std::all_of(elements_.begin(), elements_.end(), [](const PovmElement& e) { return e.is_product(); });
}

bool PovmDiagnostics::ok(const Tolerances& tol) const {
  return completeness_residual <= tol.povm_completeness && min_eigenvalue >= -tol.povm_psd &&
         hermiticity_residual <= tol.povm_psd && product_residual <= tol.product_structure;
}

PovmDiagnostics validate(const Povm& povm) {
  PovmDiagnostics diag;
  CMatrix sum = CMatrix::Zero(povm.dim(), povm.dim());
  double min_eig = std::numeric_limits<double>::infinity();
  for (const PovmElement& e : povm) {
    sum += e.matrix;
    min_eig = std::min(min_eig, min_eigenvalue_hermitian(CMatrix(0.5 * (e.matrix + e.matrix.adjoint()))));
    diag.hermiticity_residual = std::max(diag.hermiticity_residual, hermiticity_residual(e.matrix));
    if (e.is_product()) {
      CMatrix terms = CMatrix::Zero(povm.dim(), povm.dim());
      for (const ProductTerm& t : e.product) terms += t.matrix();
      diag.product_residual = std::max(diag.product_residual, max_abs(CMatrix(e.matrix - terms)));
    }
  }
  diag.completeness_residual = max_abs(CMatrix(sum - CMatrix::Identity(povm.dim(), povm.dim())));
  diag.min_eigenvalue = povm.size() == 0 ? 0.0 : min_eig;
  return diag;
}

namespace {

CVector bell_ket(int k) {
  const double s = 1.0 / std::sqrt(2.0);
  CVector v = CVector::Zero(4);
  // |kl> sits at index 2k + l
  switch (k) {
    case 1: v(0) = s; v(3) = -s; break;
    case 2: v(0) = s; v(3) = s; break;
    case 3: v(1) = s; v(2) = s; break;
    case 4: v(1) = s; v(2) = -s; break;
    default: throw DomainError("Bell element index must be in 1..4, got " + std::to_string(k));
  }
  return v;
}

}  // namespace

Povm bell_basis() {
  std::vector<CMatrix> m;
  for (int k = 1; k <= 4; ++k) m.push_back(projector(bell_ket(k)));
  return Povm::from_matrices(std::move(m));
}

Povm reduced_bell(int k) {
  const CMatrix mk = projector(bell_ket(k));
  return Povm::from_matrices({mk, CMatrix(CMatrix::Identity(4, 4) - mk)});
}

Povm linear_optics_bell(int k, int l) {
  if (k == l) throw DomainError("linear_optics_bell: the two Bell elements must differ");
  const CMatrix mk = projector(bell_ket(k));
  const CMatrix ml = projector(bell_ket(l));
  return Povm::from_matrices({mk, ml, CMatrix(CMatrix::Identity(4, 4) - mk - ml)});
}

Povm time_shared(std::span<const Povm> povms, std::span<const double> weights) {
  if (povms.empty() || povms.size() != weights.size()) {
    throw DomainError("time_shared: need one weight per POVM");
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("time_shared: weights sum to " + std::to_string(total) + ", expected 1");
  }
  const Index dim = povms.front().dim();
  std::vector<PovmElement> elements;
  for (std::size_t k = 0; k < povms.size(); ++k) {
    if (weights[k] <= 0.0) throw DomainError("time_shared: weights must be positive");
    if (povms[k].dim() != dim) throw DomainError("time_shared: POVM dimensions differ");
    for (const PovmElement& e : povms[k]) {
      PovmElement scaled{weights[k] * e.matrix, e.product};
      for (ProductTerm& t : scaled.product) t.weight *= weights[k];
      elements.push_back(std::move(scaled));
    }
  }
  return Povm(dim, std::move(elements));
}

Povm product_basis_povm(const CMatrix& ua, const CMatrix& ub, double weight) {
  const Index da = ua.rows();
  const Index db = ub.rows();
  std::vector<PovmElement> elements;
  elements.reserve(static_cast<std::size_t>(da * db));
  for (Index i = 0; i < da; ++i) {
    for (Index j = 0; j < db; ++j) {
      ProductTerm t{weight, ua.col(i), ub.col(j)};
      CMatrix m = t.matrix();
      elements.push_back({std::move(m), {std::move(t)}});
    }
  }
  return Povm(da * db, std::move(elements));
}

Povm local_spin_povm() {
  const double s = 1.0 / std::sqrt(2.0);
  std::array<CMatrix, 3> eig{CMatrix(2, 2), CMatrix(2, 2), CMatrix::Identity(2, 2)};
  eig[0] << s, s, s, -s;
  eig[1] << s, s, kI * s, -kI * s;
  std::vector<Povm> settings;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) settings.push_back(product_basis_povm(eig[i], eig[j]));
  }
  const std::vector<double> weights(9, 1.0 / 9.0);
  return time_shared(settings, weights);
}

Povm random_product_povm(int d, int n_bases, std::uint64_t seed) {
  if (d < 2) throw DomainError("random_product_povm: d must be at least 2");
  if (n_bases < 1) throw DomainError("random_product_povm: need at least one basis");
  Rng rng(seed);
  std::vector<PovmElement> elements;
  for (int k = 0; k < n_bases; ++k) {
    const CMatrix ua = haar_unitary(d, rng);
    const CMatrix ub = haar_unitary(d, rng);
    Povm basis = product_basis_povm(ua, ub, 1.0 / n_bases);
    for (const PovmElement& e : basis) elements.push_back(e);
  }
  return Povm(static_cast<Index>(d) * d, std::move(elements));
}

Povm random_povm(Index dim, int n, Rng& rng) {
  if (n < 1) throw DomainError("random_povm: need at least one element");
  std::vector<CMatrix> raw;
  CMatrix sum = CMatrix::Zero(dim, dim);
  for (int k = 0; k < n; ++k) {
    const CMatrix g = complex_gaussian(dim, dim, rng);
    raw.push_back(g * g.adjoint());
    sum += raw.back();
  }
  const CMatrix s = inverse_sqrt_hpd(sum);
  for (CMatrix& m : raw) {
    m = s * m * s;
    m = 0.5 * (m + m.adjoint()).eval();
  }
  return Povm::from_matrices(std::move(raw));
}

Povm merge_elements(const Povm& povm, std::size_t i, std::size_t j) {
  if (i == j || i >= povm.size() || j >= povm.size()) throw DomainError("merge_elements: bad element indices");
  const std::size_t keep = std::min(i, j);
  const std::size_t drop = std::max(i, j);
  std::vector<PovmElement> elements;
  for (std::size_t k = 0; k < povm.size(); ++k) {
    if (k == drop) continue;
    if (k != keep) {
      elements.push_back(povm[k]);
      continue;
    }
    PovmElement merged{povm[keep].matrix + povm[drop].matrix, {}};
    if (povm[keep].is_product() && povm[drop].is_product()) {
      merged.product = povm[keep].product;
      merged.product.insert(merged.product.end(), povm[drop].product.begin(), povm[drop].product.end());
    }
    elements.push_back(std::move(merged));
  }
  return Povm(povm.dim(), std::move(elements));
}

Povm refine_separable(const Povm& povm) {
  std::vector<PovmElement> elements;
  for (std::size_t k = 0; k < povm.size(); ++k) {
    const PovmElement& e = povm[k];
    if (!e.is_product()) {
      throw DomainError("refine_separable: element " + std::to_string(k) + " has no product decomposition");
    }
    if (e.product.size() == 1) {
      elements.push_back(e);
      continue;
    }
    for (const ProductTerm& t : e.product) elements.push_back({t.matrix(), {t}});
  }
  return Povm(povm.dim(), std::move(elements));
}

Povm conjugate_first_factor(const Povm& povm, const CMatrix& v) {
  const Index da = v.rows();
  if (v.cols() != da || da == 0 || povm.dim() % da != 0) {
    throw DomainError("conjugate_first_factor: unitary does not act on a factor of the POVM space");
  }
  const CMatrix w = kron(v, CMatrix::Identity(povm.dim() / da, povm.dim() / da));
  std::vector<PovmElement> elements;
  elements.reserve(povm.size());
  for (const PovmElement& e : povm) {
    PovmElement c{w * e.matrix * w.adjoint(), e.product};
    for (ProductTerm& t : c.product) t.a = v * t.a;
    elements.push_back(std::move(c));
  }
  return Povm(povm.dim(), std::move(elements));
}

}  // namespace uniest

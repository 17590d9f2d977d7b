// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#include "uniest/matsumoto.hpp"

#include <cmath>
#include <sstream>

#include "uniest/errors.hpp"
#include "uniest/linalg.hpp"

namespace uniest {

MatsumotoConfig MatsumotoConfig::householder(int p) {
  if (p < 1) throw DomainError("MatsumotoConfig: need at least one parameter");
  const Index n = p + 1;
  const RVector u = RVector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  RVector w = -u;
  w(n - 1) += 1.0;
  MatsumotoConfig config;
  config.o = RMatrix::Identity(n, n) - 2.0 * w * w.transpose() / w.squaredNorm();
  config.floor = 1.0 / std::sqrt(static_cast<double>(n)) - 1e-12;
  return config;
}

void MatsumotoConfig::check(const Tolerances& tol) const {
  if (o.rows() != o.cols() || o.rows() < 2) throw DomainError("MatsumotoConfig: o must be square");
  const Index n = o.rows();
  const double orth = max_abs(RMatrix(o.transpose() * o - RMatrix::Identity(n, n)));
  if (orth > tol.unitarity) {
    throw DomainError("MatsumotoConfig: o is not orthogonal (residual " + std::to_string(orth) + ")");
  }
  if (!(floor > 0.0)) throw DomainError("MatsumotoConfig: floor must be positive");
  const double smallest = o.col(n - 1).cwiseAbs().minCoeff();
  if (smallest < floor) {
    throw DomainError("MatsumotoConfig: last column entry " + std::to_string(smallest) + " is below the floor " +
                      std::to_string(floor));
  }
}

std::vector<CVector> matsumoto_vectors(const OutputModel& model, const FisherMatrix& h) {
  const int p = model.num_params();
  const RMatrix h_inv_sqrt = inverse_sqrt_spd(h.entries);
  std::vector<CVector> m;
  m.reserve(static_cast<std::size_t>(p) + 1);
  for (int k = 0; k < p; ++k) {
    CVector v = CVector::Zero(model.dim());
    for (int l = 0; l < p; ++l) v += h_inv_sqrt(k, l) * model.l[l];
    m.push_back(std::move(v));
  }
  m.push_back(model.psi);
  return m;
}

Povm matsumoto_povm(const OutputModel& model, const FisherMatrix& h, const MatsumotoConfig& config,
                    const Tolerances& tol) {
  const int p = model.num_params();
  if (h.size() != p) throw DomainError("matsumoto_povm: H does not match the model");
  if (config.o.rows() != p + 1) {
    throw DomainError("matsumoto_povm: o must be " + std::to_string(p + 1) + "x" + std::to_string(p + 1));
  }
  config.check(tol);
  const double gap = achievability_gap(model).max_abs;
  if (gap >= tol.achievability) {
    std::ostringstream msg;
    msg << "matsumoto_povm: Im<l_i|l_j> reaches " << gap << "; the bound is not achievable at this point";
    throw AchievabilityError(msg.str(), gap);
  }
  const double hmin = h.min_eigenvalue();
  if (hmin <= tol.positive_definite) {
    std::ostringstream msg;
    msg << "matsumoto_povm: quantum Fisher matrix is singular (smallest eigenvalue " << hmin << ")";
    throw SingularMatrixError(msg.str(), hmin);
  }
  const std::vector<CVector> m = matsumoto_vectors(model, h);
  const Index dim = model.dim();
  std::vector<CMatrix> elements;
  elements.reserve(static_cast<std::size_t>(p) + 2);
  CMatrix rest = CMatrix::Identity(dim, dim);
  for (int a = 0; a <= p; ++a) {
    CVector b = CVector::Zero(dim);
    for (int c = 0; c <= p; ++c) b += config.o(a, c) * m[c];
    elements.push_back(projector(b));
    rest -= elements.back();
  }
  elements.push_back(0.5 * (rest + rest.adjoint()));
  return Povm::from_matrices(std::move(elements));
}

}  // namespace uniest

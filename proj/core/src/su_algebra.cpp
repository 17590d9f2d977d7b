// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#include "uniest/su_algebra.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "uniest/errors.hpp"
#include "uniest/linalg.hpp"

namespace uniest {

CMatrix GeneratorBasis::combine(const RVector& coords) const {
  if (static_cast<std::size_t>(coords.size()) != generators_.size()) {
    throw DomainError("GeneratorBasis: expected " + std::to_string(generators_.size()) +
                      " coordinates, got " + std::to_string(coords.size()));
  }
  CMatrix sum = CMatrix::Zero(dim_, dim_);
  for (std::size_t a = 0; a < generators_.size(); ++a) sum += coords(static_cast<Index>(a)) * generators_[a];
  return sum;
}

RVector GeneratorBasis::components(const CMatrix& hermitian) const {
  RVector x(static_cast<Index>(generators_.size()));
  for (std::size_t a = 0; a < generators_.size(); ++a) {
    x(static_cast<Index>(a)) = trace_product(generators_[a], hermitian).real();
  }
  return x;
}

GeneratorBasis gellmann_basis(int d) {
  if (d < 2) throw DomainError("gellmann_basis: dimension must be at least 2, got " + std::to_string(d));
  GeneratorBasis basis;
  basis.dim_ = d;
  basis.generators_.reserve(static_cast<std::size_t>(d * d - 1));
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (int k = 1; k < d; ++k) {
    for (int l = 0; l < k; ++l) {
      CMatrix sym = CMatrix::Zero(d, d);
      sym(k, l) = inv_sqrt2;
      sym(l, k) = inv_sqrt2;
      basis.generators_.push_back(sym);
      CMatrix anti = CMatrix::Zero(d, d);
      anti(k, l) = kI * inv_sqrt2;
      anti(l, k) = -kI * inv_sqrt2;
      basis.generators_.push_back(anti);
    }
  }
  basis.diagonal_ = RMatrix::Zero(d - 1, d);
  for (int m = 1; m < d; ++m) {
    const double norm = 1.0 / std::sqrt(static_cast<double>(m) * (m + 1));
    for (int k = 0; k < m; ++k) basis.diagonal_(m - 1, k) = norm;
    basis.diagonal_(m - 1, m) = -m * norm;
    CMatrix t = CMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) t(k, k) = basis.diagonal_(m - 1, k);
    basis.generators_.push_back(t);
  }
  return basis;
}

CMatrix unitary_exp(const GeneratorBasis& basis, const RVector& coords) {
  return expm(kI * basis.combine(coords));
}

double generator_spread(const GeneratorBasis& basis, const RVector& coords) {
  const RVector ev = Eigen::SelfAdjointEigenSolver<CMatrix>(basis.combine(coords), Eigen::EigenvaluesOnly).eigenvalues();
  return ev(ev.size() - 1) - ev(0);
}

std::vector<CMatrix> unitary_derivatives_exp(const GeneratorBasis& basis, const RVector& coords) {
  const CMatrix a = kI * basis.combine(coords);
  std::vector<CMatrix> partials;
  partials.reserve(basis.size());
  for (const CMatrix& t : basis.generators()) partials.push_back(expm_frechet(a, kI * t));
  return partials;
}

const std::array<CMatrix, 3>& pauli() {
  static const std::array<CMatrix, 3> kPauli = [] {
    std::array<CMatrix, 3> s{CMatrix::Zero(2, 2), CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)};
    s[0](0, 1) = 1.0;
    s[0](1, 0) = 1.0;
    s[1](0, 1) = -kI;
    s[1](1, 0) = kI;
    s[2](0, 0) = 1.0;
    s[2](1, 1) = -1.0;
    return s;
  }();
  return kPauli;
}

Eigen::Vector3d polar_axis(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

bool in_su2_domain(double alpha, double theta, const Tolerances& tol) {
  const double lo = tol.chart_boundary;
  const double hi = std::numbers::pi - tol.chart_boundary;
  return alpha > lo && alpha < hi && theta > lo && theta < hi;
}

namespace {

CMatrix dot_sigma(const Eigen::Vector3d& v) {
  const auto& s = pauli();
  return v(0) * s[0] + v(1) * s[1] + v(2) * s[2];
}

}  // namespace

UnitaryJet su2_polar(double alpha, double theta, double phi) {
  const Eigen::Vector3d n = polar_axis(theta, phi);
  const Eigen::Vector3d dn_theta{std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi),
                                 -std::sin(theta)};
  const Eigen::Vector3d dn_phi{-std::sin(theta) * std::sin(phi), std::sin(theta) * std::cos(phi), 0.0};
  const CMatrix one = CMatrix::Identity(2, 2);
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);

  UnitaryJet jet;
  jet.value = ca * one + kI * sa * dot_sigma(n);
  jet.partials = {
      -sa * one + kI * ca * dot_sigma(n),
      kI * sa * dot_sigma(dn_theta),
      kI * sa * dot_sigma(dn_phi),
  };
  return jet;
}

UnitaryJet unitary_su2(double alpha, double theta, double phi, const Tolerances& tol) {
  if (!in_su2_domain(alpha, theta, tol)) {
    throw DomainError("su2 polar chart: alpha and theta must lie in (0, pi) away from the boundary; got alpha=" +
                      std::to_string(alpha) + " theta=" + std::to_string(theta));
  }
  return su2_polar(alpha, theta, phi);
}

RVector su2_polar_to_exp(double alpha, double theta, double phi) {
  return std::numbers::sqrt2 * alpha * polar_axis(theta, phi);
}

Eigen::Matrix3d su2_polar_to_exp_jacobian(double alpha, double theta, double phi) {
  const double r = std::numbers::sqrt2;
  Eigen::Matrix3d j;
  j.col(0) = r * polar_axis(theta, phi);
  j.col(1) = r * alpha *
             Eigen::Vector3d{std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi), -std::sin(theta)};
  j.col(2) = r * alpha * Eigen::Vector3d{-std::sin(theta) * std::sin(phi), std::sin(theta) * std::cos(phi), 0.0};
  return j;
}

}  // namespace uniest

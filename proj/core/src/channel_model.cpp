// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#include "uniest/channel_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "uniest/errors.hpp"
#include "uniest/linalg.hpp"

namespace uniest {

BipartiteState::BipartiteState(CMatrix amplitudes, const Tolerances& tol) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.rows() != amplitudes_.cols() || amplitudes_.rows() < 2) {
    throw DomainError("BipartiteState: amplitude matrix must be square with d >= 2");
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > tol.normalization) {
    throw DomainError("BipartiteState: tr(R R^dagger) = " + std::to_string(norm2) + ", expected 1");
  }
}

BipartiteState BipartiteState::normalized(CMatrix amplitudes) {
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw DomainError("BipartiteState: zero amplitude matrix");
  amplitudes /= norm;
  return BipartiteState(std::move(amplitudes));
}

CMatrix BipartiteState::reduced() const { return amplitudes_ * amplitudes_.adjoint(); }

double BipartiteState::entanglement_deviation() const {
  const Index d = amplitudes_.rows();
  return max_abs(CMatrix(reduced() - CMatrix::Identity(d, d) / static_cast<double>(d)));
}

bool BipartiteState::maximally_entangled(const Tolerances& tol) const {
  return entanglement_deviation() < tol.max_entangled;
}

RVector BipartiteState::reduced_components(const GeneratorBasis& basis) const {
  const Index d = amplitudes_.rows();
  return basis.components(reduced() - CMatrix::Identity(d, d) / static_cast<double>(d));
}

CVector BipartiteState::ket() const { return flatten_row_major(amplitudes_); }

BipartiteState max_entangled(int d) {
  if (d < 2) throw DomainError("max_entangled: dimension must be at least 2");
  return BipartiteState(CMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));
}

BipartiteState singlet() {
  CMatrix r = CMatrix::Zero(2, 2);
  r(0, 1) = -1.0 / std::sqrt(2.0);
  r(1, 0) = 1.0 / std::sqrt(2.0);
  return BipartiteState(r);
}

BipartiteState random_bipartite_state(int d, Rng& rng) {
  return BipartiteState::normalized(complex_gaussian(d, d, rng));
}

OutputModel output_model(const CMatrix& u, std::span<const CMatrix> du, const BipartiteState& input) {
  const Index d = input.dim();
  if (u.rows() != d || u.cols() != d) {
    throw DomainError("output_model: unitary is " + std::to_string(u.rows()) + "x" + std::to_string(u.cols()) +
                      " but the probe has d=" + std::to_string(d));
  }
  OutputModel model;
  model.psi = flatten_row_major(u * input.amplitudes());
  model.rho = projector(model.psi);
  model.dpsi.reserve(du.size());
  model.l.reserve(du.size());
  model.drho.reserve(du.size());
  for (const CMatrix& partial : du) {
    if (partial.rows() != d || partial.cols() != d) throw DomainError("output_model: derivative has wrong shape");
    CVector dpsi = flatten_row_major(partial * input.amplitudes());
    const Complex overlap = dpsi.dot(model.psi);  // <psi_a|psi>
    model.l.push_back(2.0 * (dpsi + overlap * model.psi));
    CMatrix cross = outer(dpsi, model.psi);
    model.drho.push_back(cross + cross.adjoint());
    model.dpsi.push_back(std::move(dpsi));
  }
  return model;
}

double model_residual(const OutputModel& model) {
  double r = std::abs(model.psi.squaredNorm() - 1.0);
  for (int a = 0; a < model.num_params(); ++a) {
    r = std::max(r, std::abs(model.dpsi[a].dot(model.psi).real()));
    r = std::max(r, std::abs(model.l[a].dot(model.psi).real()));
  }
  return r;
}

DensityJet pauli_output_density(double alpha, double theta, double phi, const Tolerances& tol) {
  const UnitaryJet jet = unitary_su2(alpha, theta, phi, tol);
  const auto& s = pauli();
  const CMatrix& u = jet.value;
  DensityJet out;
  out.rho = CMatrix::Identity(4, 4);
  for (auto& p : out.partials) p = CMatrix::Zero(4, 4);
  for (int i = 0; i < 3; ++i) {
    out.rho -= kron(u * s[i] * u.adjoint(), s[i]);
    for (int x = 0; x < 3; ++x) {
      const CMatrix& du = jet.partials[x];
      out.partials[x] -= kron(du * s[i] * u.adjoint() + u * s[i] * du.adjoint(), s[i]);
    }
  }
  out.rho *= 0.25;
  for (auto& p : out.partials) p *= 0.25;
  return out;
}

Eigen::Matrix3d heisenberg_coefficients(double alpha, double theta, double phi, const Tolerances& tol) {
  if (!in_su2_domain(alpha, theta, tol)) throw DomainError("heisenberg_coefficients: point outside the polar chart");
  const Eigen::Vector3d n = polar_axis(theta, phi);
  const double c2 = std::cos(2 * alpha);
  const double s2 = std::sin(2 * alpha);
  const double sa2 = std::sin(alpha) * std::sin(alpha);
  Eigen::Matrix3d eps_n;  // sum_k eps_ijk n_k
  eps_n << 0.0, n(2), -n(1),
           -n(2), 0.0, n(0),
           n(1), -n(0), 0.0;
  return c2 * Eigen::Matrix3d::Identity() - s2 * eps_n + 2.0 * sa2 * n * n.transpose();
}

RVector outcome_probabilities(const CMatrix& rho, const Povm& povm, const Tolerances& tol) {
  if (rho.rows() != povm.dim() || rho.cols() != povm.dim()) {
    throw DomainError("outcome_probabilities: state dimension " + std::to_string(rho.rows()) +
                      " does not match POVM dimension " + std::to_string(povm.dim()));
  }
  const PovmDiagnostics diag = validate(povm);
  if (!diag.ok(tol)) {
    throw DomainError("outcome_probabilities: invalid POVM (completeness residual " +
                      std::to_string(diag.completeness_residual) + ", min eigenvalue " +
                      std::to_string(diag.min_eigenvalue) + ")");
  }
  RVector p(static_cast<Index>(povm.size()));
  for (std::size_t x = 0; x < povm.size(); ++x) p(static_cast<Index>(x)) = trace_product(rho, povm[x].matrix).real();
  return p;
}

RVector outcome_probabilities_pure(const CVector& psi, const Povm& povm) {
  RVector p(static_cast<Index>(povm.size()));
  for (std::size_t x = 0; x < povm.size(); ++x) {
    p(static_cast<Index>(x)) = psi.dot(povm[x].matrix * psi).real();
  }
  return p;
}

std::string_view chart_name(Chart chart) { return chart == Chart::kExp ? "exp" : "su2"; }

ChannelFamily::ChannelFamily(BipartiteState probe, Chart chart)
    : probe_(std::move(probe)), chart_(chart), basis_(gellmann_basis(probe_.dim())) {
  if (chart_ == Chart::kSu2Polar && probe_.dim() != 2) {
    throw DomainError("ChannelFamily: the su2 polar chart requires d = 2");
  }
}

int ChannelFamily::num_params() const noexcept {
  return chart_ == Chart::kSu2Polar ? 3 : static_cast<int>(basis_.size());
}

bool ChannelFamily::in_domain(const RVector& coords, const Tolerances& tol) const {
  if (coords.size() != num_params() || !coords.allFinite()) return false;
  if (chart_ == Chart::kSu2Polar) return in_su2_domain(coords(0), coords(1), tol);
  return generator_spread(basis_, coords) < 2.0 * std::numbers::pi - tol.chart_boundary;
}

void ChannelFamily::check_domain(const RVector& coords, const Tolerances& tol) const {
  if (coords.size() != num_params()) {
    throw DomainError("chart " + std::string(chart_name(chart_)) + " expects " + std::to_string(num_params()) +
                      " coordinates, got " + std::to_string(coords.size()));
  }
  if (!in_domain(coords, tol)) {
    throw DomainError("parameter point lies outside the " + std::string(chart_name(chart_)) + " chart domain");
  }
}

UnitaryJet ChannelFamily::unitary(const RVector& coords) const {
  check_domain(coords);
  if (chart_ == Chart::kSu2Polar) return su2_polar(coords(0), coords(1), coords(2));
  return {unitary_exp(basis_, coords), unitary_derivatives_exp(basis_, coords)};
}

CMatrix ChannelFamily::unitary_value(const RVector& coords) const {
  check_domain(coords);
  if (chart_ == Chart::kSu2Polar) return su2_polar(coords(0), coords(1), coords(2)).value;
  return unitary_exp(basis_, coords);
}

OutputModel ChannelFamily::model(const RVector& coords) const {
  const UnitaryJet jet = unitary(coords);
  return output_model(jet.value, jet.partials, probe_);
}

CVector ChannelFamily::output_state(const RVector& coords) const {
  return flatten_row_major(unitary_value(coords) * probe_.amplitudes());
}

}  // namespace uniest

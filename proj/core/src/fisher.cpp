// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#include "uniest/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "uniest/errors.hpp"
#include "uniest/linalg.hpp"

namespace uniest {

double FisherMatrix::symmetry_residual() const { return max_abs(RMatrix(entries - entries.transpose())); }

double FisherMatrix::min_eigenvalue() const { return uniest::min_eigenvalue(entries); }

int FisherMatrix::rank(double rel_tol) const { return numerical_rank(entries, rel_tol); }

FisherMatrix qfi_pure(const OutputModel& model) {
  const int p = model.num_params();
  FisherMatrix h{RMatrix(p, p), FisherKind::kQuantum};
  for (int i = 0; i < p; ++i) {
    for (int j = i; j < p; ++j) {
      const double v = model.l[i].dot(model.l[j]).real();
      h.entries(i, j) = v;
      h.entries(j, i) = v;
    }
  }
  return h;
}

std::vector<CMatrix> sld_mixed(const CMatrix& rho, std::span<const CMatrix> drho, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
  const RVector& r = es.eigenvalues();
  const CMatrix& v = es.eigenvectors();
  const Index n = rho.rows();
  std::vector<CMatrix> slds;
  slds.reserve(drho.size());
  for (std::size_t i = 0; i < drho.size(); ++i) {
    const CMatrix x = v.adjoint() * drho[i] * v;
    CMatrix lam = CMatrix::Zero(n, n);
    for (Index a = 0; a < n; ++a) {
      for (Index b = 0; b < n; ++b) {
        const double denom = r(a) + r(b);
        if (denom > tol.sld_support) {
          lam(a, b) = 2.0 * x(a, b) / denom;
        } else if (std::abs(x(a, b)) > tol.sld_ill_posed) {
          std::ostringstream msg;
          msg << "sld_mixed: derivative " << i << " has weight " << std::abs(x(a, b))
              << " on the kernel of rho; the SLD equation has no solution";
          throw IllPosedError(msg.str());
        }
      }
    }
    slds.push_back(v * lam * v.adjoint());
  }
  return slds;
}

FisherMatrix qfi_mixed(const CMatrix& rho, std::span<const CMatrix> slds) {
  const Index p = static_cast<Index>(slds.size());
  FisherMatrix h{RMatrix(p, p), FisherKind::kQuantum};
  for (Index i = 0; i < p; ++i) {
    for (Index j = i; j < p; ++j) {
      const double v = trace_product(rho, slds[i] * slds[j]).real();
      h.entries(i, j) = v;
      h.entries(j, i) = v;
    }
  }
  return h;
}

FisherMatrix classical_fi_from_distribution(const RVector& p, const RMatrix& dp, const Tolerances& tol) {
  if (dp.rows() != p.size()) throw DomainError("classical_fi: derivative rows must match outcomes");
  const Index params = dp.cols();
  FisherMatrix fi{RMatrix::Zero(params, params), FisherKind::kClassical};
  for (Index x = 0; x < p.size(); ++x) {
    const RVector grad = dp.row(x).transpose();
    if (p(x) < tol.zero_probability) {
      const double worst = grad.size() == 0 ? 0.0 : grad.cwiseAbs().maxCoeff();
      if (worst < tol.zero_derivative) continue;
      std::ostringstream msg;
      msg << "classical_fi: outcome " << x << " has probability " << p(x)
          << " but probability derivative " << worst << "; the Fisher information diverges";
      throw SingularOutcomeError(msg.str(), x);
    }
    fi.entries.noalias() += grad * grad.transpose() / p(x);
  }
  return fi;
}

FisherMatrix classical_fi(const CMatrix& rho, std::span<const CMatrix> drho, const Povm& povm,
                          const Tolerances& tol) {
  if (rho.rows() != povm.dim()) throw DomainError("classical_fi: state and POVM dimensions differ");
  const Index n = static_cast<Index>(povm.size());
  const Index params = static_cast<Index>(drho.size());
  RVector p(n);
  RMatrix dp(n, params);
  for (Index x = 0; x < n; ++x) {
    const CMatrix& m = povm[static_cast<std::size_t>(x)].matrix;
    p(x) = trace_product(rho, m).real();
    for (Index a = 0; a < params; ++a) dp(x, a) = trace_product(drho[a], m).real();
  }
  return classical_fi_from_distribution(p, dp, tol);
}

FisherMatrix classical_fi(const OutputModel& model, const Povm& povm, const Tolerances& tol) {
  if (model.dim() != povm.dim()) throw DomainError("classical_fi: state and POVM dimensions differ");
  const Index n = static_cast<Index>(povm.size());
  const int params = model.num_params();
  RVector p(n);
  RMatrix dp(n, params);
  for (Index x = 0; x < n; ++x) {
    const CVector w = povm[static_cast<std::size_t>(x)].matrix * model.psi;
    p(x) = model.psi.dot(w).real();
    for (int a = 0; a < params; ++a) dp(x, a) = 2.0 * w.dot(model.dpsi[a]).real();
  }
  return classical_fi_from_distribution(p, dp, tol);
}

MeritReport merit(const FisherMatrix& h, const FisherMatrix& i, const std::optional<RMatrix>& g,
                  const Tolerances& tol) {
  if (h.size() != i.size()) throw DomainError("merit: H and I differ in size");
  MeritReport report;
  report.qcrb_min_eig = min_eigenvalue(RMatrix(h.entries - i.entries));
  if (g) {
    if (g->rows() != h.size() || g->cols() != h.size()) throw DomainError("merit: weight matrix has wrong size");
    const double gmin = min_eigenvalue(RMatrix(0.5 * (*g + g->transpose())));
    if (gmin < -tol.fisher_psd) throw DomainError("merit: weight matrix G is not positive semidefinite");
    report.weight = MeritWeight::kGeneral;
    report.value = (*g * i.entries).trace();
    return report;
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> es(h.entries);
  const RVector& ev = es.eigenvalues();
  if (ev.minCoeff() <= tol.positive_definite) {
    std::ostringstream msg;
    msg << "merit: quantum Fisher matrix is singular (smallest eigenvalue " << ev.minCoeff() << ")";
    throw SingularMatrixError(msg.str(), ev.minCoeff());
  }
  const RMatrix h_inv = es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  report.weight = MeritWeight::kInverseQfi;
  report.value = (h_inv * i.entries).trace();
  return report;
}

MeritReport evaluate_merit(const OutputModel& model, const Povm& povm, const Tolerances& tol) {
  const FisherMatrix h = qfi_pure(model);
  const FisherMatrix i = classical_fi(model, povm, tol);
  MeritReport report = merit(h, i, std::nullopt, tol);
  report.achievability_gap = achievability_gap(model).max_abs;
  return report;
}

QcrbVerdict qcrb_check(const FisherMatrix& h, const FisherMatrix& i, const Tolerances& tol) {
  if (h.size() != i.size()) throw DomainError("qcrb_check: H and I differ in size");
  const double m = min_eigenvalue(RMatrix(h.entries - i.entries));
  return {m >= -tol.qcrb, m};
}

AchievabilityGap achievability_gap(const OutputModel& model) {
  const int p = model.num_params();
  AchievabilityGap gap{RMatrix::Zero(p, p), 0.0};
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      const double v = model.l[i].dot(model.l[j]).imag();
      gap.matrix(i, j) = v;
      gap.matrix(j, i) = -v;
    }
  }
  gap.max_abs = max_abs(gap.matrix);
  return gap;
}

RMatrix commutator_gap(const BipartiteState& input, const GeneratorBasis& basis) {
  const CMatrix rr = input.reduced();
  const Index p = static_cast<Index>(basis.size());
  RMatrix g(p, p);
  for (Index a = 0; a < p; ++a) {
    for (Index b = 0; b < p; ++b) {
      const CMatrix comm = basis[a] * basis[b] - basis[b] * basis[a];
      g(a, b) = (2.0 * trace_product(rr, comm) / kI).real();
    }
  }
  return g;
}

double fidelity_pure(const CVector& psi, const CVector& phi) { return std::norm(psi.dot(phi)); }

double bures_distance_sq(const CVector& psi, const CVector& phi) {
  return 2.0 * (1.0 - std::abs(psi.dot(phi)));
}

}  // namespace uniest

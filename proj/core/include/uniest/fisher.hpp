// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "uniest/channel_model.hpp"
#include "uniest/povm.hpp"
#include "uniest/su_algebra.hpp"
#include "uniest/tolerances.hpp"
#include "uniest/types.hpp"

namespace uniest {

enum class FisherKind { kQuantum, kClassical };

struct FisherMatrix {
  RMatrix entries;
  FisherKind kind = FisherKind::kQuantum;

  Index size() const noexcept { return entries.rows(); }
  double symmetry_residual() const;
  double min_eigenvalue() const;
  int rank(double rel_tol = 1e-8) const;
};

enum class MeritWeight { kInverseQfi, kGeneral };

struct MeritReport {
  double value = 0.0;
  MeritWeight weight = MeritWeight::kInverseQfi;
  std::optional<double> achievability_gap;  // max |Im<l_i|l_j>| when a model is known
  double qcrb_min_eig = 0.0;                // min eig(H - I)
};

/// H_ij = Re<l_i|l_j>.
FisherMatrix qfi_pure(const OutputModel& model);

/// Symmetric logarithmic derivatives of a mixed state, solved in the
/// eigenbasis of rho. Throws IllPosedError when drho has weight on the
/// kernel-kernel block.
std::vector<CMatrix> sld_mixed(const CMatrix& rho, std::span<const CMatrix> drho,
                               const Tolerances& tol = default_tolerances());

/// H_ij = Re tr[rho l_i l_j].
FisherMatrix qfi_mixed(const CMatrix& rho, std::span<const CMatrix> slds);

/// Classical Fisher information of the POVM. Outcomes with vanishing
/// probability contribute nothing when their derivatives also vanish; otherwise
/// SingularOutcomeError is thrown.
FisherMatrix classical_fi(const CMatrix& rho, std::span<const CMatrix> drho, const Povm& povm,
                          const Tolerances& tol = default_tolerances());

/// Same, using the pure-state vectors of the model (p = <psi|M|psi>).
FisherMatrix classical_fi(const OutputModel& model, const Povm& povm,
                          const Tolerances& tol = default_tolerances());

/// Fisher information of a distribution: \p dp has one row per outcome.
FisherMatrix classical_fi_from_distribution(const RVector& p, const RMatrix& dp,
                                            const Tolerances& tol = default_tolerances());

/// tr(H^{-1} I), or tr(G I) when \p g is given. H is inverted through its
/// eigendecomposition; SingularMatrixError names the smallest eigenvalue when
/// it falls below the positive-definiteness gate.
MeritReport merit(const FisherMatrix& h, const FisherMatrix& i,
                  const std::optional<RMatrix>& g = std::nullopt,
                  const Tolerances& tol = default_tolerances());

/// merit() for a model and POVM, with the achievability gap filled in.
MeritReport evaluate_merit(const OutputModel& model, const Povm& povm,
                           const Tolerances& tol = default_tolerances());

struct QcrbVerdict {
  bool holds = false;
  double min_eigenvalue = 0.0;
};

QcrbVerdict qcrb_check(const FisherMatrix& h, const FisherMatrix& i,
                       const Tolerances& tol = default_tolerances());

struct AchievabilityGap {
  RMatrix matrix;  // Im<l_i|l_j>, antisymmetric
  double max_abs = 0.0;
};

AchievabilityGap achievability_gap(const OutputModel& model);

/// (2/i) tr(R R^dagger [T_a, T_b]): the gap matrix at U = 1 in the exp chart.
RMatrix commutator_gap(const BipartiteState& input, const GeneratorBasis& basis);

/// |<psi|phi>|^2.
double fidelity_pure(const CVector& psi, const CVector& phi);

/// 2 (1 - sqrt(F)).
double bures_distance_sq(const CVector& psi, const CVector& phi);

}  // namespace uniest

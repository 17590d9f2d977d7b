// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "uniest/channel_model.hpp"
#include "uniest/fisher.hpp"
#include "uniest/povm.hpp"

namespace uniest {

/// Real orthogonal (p+1) x (p+1) mixing matrix for the p+2 element measurement.
struct MatsumotoConfig {
  RMatrix o;
  double floor = 0.0;  // lower bound on |o(a, p)| for every row a

  /// Householder reflection taking e_{p+1} to (1, ..., 1)/sqrt(p+1).
  static MatsumotoConfig householder(int p);

  /// Throws DomainError when o is not orthogonal or its last column dips below floor.
  void check(const Tolerances& tol = default_tolerances()) const;
};

/// Basis |m_1>, ..., |m_p>, |psi> with |m_k> = sum_l (H^{-1/2})_kl |l_l>.
std::vector<CVector> matsumoto_vectors(const OutputModel& model, const FisherMatrix& h);

/// M_a = |b_a><b_a| with |b_a> = sum_b o_ab |m_b>, plus M_{p+2} = 1 - sum M_a.
/// Throws AchievabilityError, SingularMatrixError or DomainError when the
/// preconditions fail.
Povm matsumoto_povm(const OutputModel& model, const FisherMatrix& h, const MatsumotoConfig& config,
                    const Tolerances& tol = default_tolerances());

}  // namespace uniest

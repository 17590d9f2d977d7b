// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "uniest/channel_model.hpp"
#include "uniest/fisher.hpp"
#include "uniest/povm.hpp"
#include "uniest/types.hpp"

namespace uniest {

/// Multinomial draw of n outcomes. Throws DomainError for an invalid distribution.
std::vector<std::uint64_t> sample_outcomes(std::span<const double> probabilities, std::uint64_t n,
                                           std::uint64_t seed);

/// sum_x counts_x log p_x(coords); -inf outside the chart or when a counted
/// outcome has zero probability.
double log_likelihood(std::span<const double> counts, const ChannelFamily& family, const Povm& povm,
                      const RVector& coords);

struct MleOptions {
  int grid_points = 9;           // per axis
  double grid_radius = 0.5;      // half-width of the seeding box
  std::size_t max_grid_evaluations = 20000;  // larger grids are subsampled
  double simplex_tolerance = 1e-8;
  int max_iterations = 20000;
  double identifiability = 1e-10;  // min eigenvalue of I at init
};

struct MleResult {
  RVector estimate;
  double log_likelihood = 0.0;
  double initial_log_likelihood = 0.0;
  int iterations = 0;
};

/// Maximum-likelihood estimate near \p init: grid seeding over a box around
/// init, then Nelder-Mead refinement. Throws NonIdentifiableError when the
/// Fisher information at init is singular and ConvergenceError (with the
/// best point) when the iteration cap is hit.
MleResult mle(std::span<const double> counts, const ChannelFamily& family, const Povm& povm,
              const RVector& init, const MleOptions& options = {});

struct EstimationReport {
  RVector truth;
  std::vector<RVector> estimates;
  std::uint64_t samples = 0;
  int repetitions = 0;
  RMatrix covariance;   // empirical covariance of the estimates
  RMatrix predicted;    // I^{-1} / N
  std::uint64_t seed = 0;

  /// tr(covariance) / tr(predicted).
  double trace_ratio() const;
  /// min eig(N covariance - I^{-1}).
  double crb_floor_min_eig() const;
};

/// Repeats sampling and MLE at theta0. Repetition r uses derive_seed(seed, r),
/// so results do not depend on execution order.
EstimationReport covariance_study(const ChannelFamily& family, const RVector& theta0, const Povm& povm,
                                  std::uint64_t n, int reps, std::uint64_t seed,
                                  const MleOptions& options = {});

struct InvarianceResult {
  double merit0 = 0.0;
  double merit1 = 0.0;
  double difference = 0.0;
  Povm conjugated;
};

/// Compares merit(theta0, M) with merit(theta1, (V (x) 1) M (V (x) 1)^dagger)
/// for V = U(theta1) U(theta0)^dagger.
InvarianceResult invariance_sweep(const ChannelFamily& family, const RVector& theta0,
                                  const RVector& theta1, const Povm& povm);

/// QFI at U = 1 in the exp chart for the given probe.
RMatrix qfi_at_identity(const BipartiteState& probe, const GeneratorBasis& basis);

struct SearchOptions {
  int hill_climb_budget = 4000;
  double initial_step = 0.1;
  double final_step = 1e-3;
  double threshold = 1e-6;
};

struct SearchReport {
  int dim = 0;
  CMatrix best_amplitudes;
  RMatrix best_qfi;
  double max_eigenvalue = 0.0;
  double excess = 0.0;  // max_eigenvalue - 4/d
  bool found = false;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Looks for a probe whose QFI at U = 1 has an eigenvalue above 4/d, i.e. one
/// that is not dominated by the maximally entangled probe.
SearchReport counterexample_search(int d, std::uint64_t trials, std::uint64_t seed,
                                   const SearchOptions& options = {});

}  // namespace uniest

// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "uniest/povm.hpp"
#include "uniest/random.hpp"
#include "uniest/su_algebra.hpp"
#include "uniest/tolerances.hpp"
#include "uniest/types.hpp"

namespace uniest {

/// Pure state sum_kl R_kl |k>|l> on C^d (x) C^d, stored as its amplitude matrix R.
class BipartiteState {
 public:
  /// Throws DomainError unless R is square and tr(R R^dagger) = 1.
  explicit BipartiteState(CMatrix amplitudes, const Tolerances& tol = default_tolerances());

  /// Rescales R to unit norm first.
  static BipartiteState normalized(CMatrix amplitudes);

  int dim() const noexcept { return static_cast<int>(amplitudes_.rows()); }
  const CMatrix& amplitudes() const noexcept { return amplitudes_; }

  /// R R^dagger, the reduced state of the first subsystem.
  CMatrix reduced() const;

  /// |R R^dagger - 1/d|_max.
  double entanglement_deviation() const;
  bool maximally_entangled(const Tolerances& tol = default_tolerances()) const;

  /// t_a = tr[(R R^dagger - 1/d) T_a].
  RVector reduced_components(const GeneratorBasis& basis) const;

  CVector ket() const;

 private:
  CMatrix amplitudes_;
};

BipartiteState max_entangled(int d);

/// (|10> - |01>) / sqrt(2).
BipartiteState singlet();

/// Normalized amplitude matrix with i.i.d. complex Gaussian entries.
BipartiteState random_bipartite_state(int d, Rng& rng);

/// Output state of (U (x) 1) on a bipartite probe, with everything the Fisher
/// computations need at one parameter point.
struct OutputModel {
  CVector psi;
  std::vector<CVector> dpsi;
  std::vector<CVector> l;     // l_a = 2 (psi_a + <psi_a|psi> psi)
  CMatrix rho;
  std::vector<CMatrix> drho;  // |psi_a><psi| + |psi><psi_a|

  int num_params() const noexcept { return static_cast<int>(dpsi.size()); }
  Index dim() const noexcept { return psi.size(); }
};

/// Throws DomainError on mismatched dimensions.
OutputModel output_model(const CMatrix& u, std::span<const CMatrix> du, const BipartiteState& input);

/// Largest of |<psi|psi> - 1| and |Re<psi_a|psi>| and |Re<l_a|psi>|.
double model_residual(const OutputModel& model);

struct DensityJet {
  CMatrix rho;
  std::array<CMatrix, 3> partials;
};

/// rho = (1 - sum_i U s_i U^dagger (x) s_i) / 4 for the singlet probe, with
/// analytic partials in (alpha, theta, phi). Throws DomainError outside the chart.
DensityJet pauli_output_density(double alpha, double theta, double phi,
                                const Tolerances& tol = default_tolerances());

/// (1/2) tr(U s_i U^dagger s_j) in closed form.
Eigen::Matrix3d heisenberg_coefficients(double alpha, double theta, double phi,
                                        const Tolerances& tol = default_tolerances());

/// p_x = tr(rho M_x). Throws DomainError on dimension mismatch or an invalid POVM.
RVector outcome_probabilities(const CMatrix& rho, const Povm& povm,
                              const Tolerances& tol = default_tolerances());

/// p_x = <psi|M_x|psi>; no POVM validation.
RVector outcome_probabilities_pure(const CVector& psi, const Povm& povm);

enum class Chart { kExp, kSu2Polar };

std::string_view chart_name(Chart chart);

/// The output family theta -> (U(theta) (x) 1)|probe> for one chart.
class ChannelFamily {
 public:
  /// The polar chart requires d = 2.
  ChannelFamily(BipartiteState probe, Chart chart);

  int dim() const noexcept { return probe_.dim(); }
  Chart chart() const noexcept { return chart_; }
  int num_params() const noexcept;
  const BipartiteState& probe() const noexcept { return probe_; }
  const GeneratorBasis& basis() const noexcept { return basis_; }

  /// The polar chart excludes alpha, theta within the boundary tolerance of 0
  /// and pi. The exp chart requires the eigenvalues of sum_a x_a T_a to spread
  /// less than 2 pi, which keeps its differential invertible.
  bool in_domain(const RVector& coords, const Tolerances& tol = default_tolerances()) const;
  void check_domain(const RVector& coords, const Tolerances& tol = default_tolerances()) const;

  UnitaryJet unitary(const RVector& coords) const;
  CMatrix unitary_value(const RVector& coords) const;
  OutputModel model(const RVector& coords) const;
  CVector output_state(const RVector& coords) const;

 private:
  BipartiteState probe_;
  Chart chart_;
  GeneratorBasis basis_;
};

}  // namespace uniest

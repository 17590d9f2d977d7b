// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_helpers.hpp"
#include "uniest/fisher.hpp"

namespace uniest {
namespace {

using std::numbers::pi;

RMatrix polar_closed_form(const RVector& q) {
  const double sa = std::sin(q(0));
  const double st = std::sin(q(1));
  return Eigen::Vector3d(4.0, 4.0 * sa * sa, 4.0 * sa * sa * st * st).asDiagonal();
}

RMatrix random_psd(Index n, Rng& rng) {
  std::normal_distribution<double> normal;
  RMatrix a(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) a(i, j) = normal(rng);
  }
  return a * a.transpose();
}

TEST(QfiPure, PolarClosedForm) {
  Rng rng(1);
  const ChannelFamily family(singlet(), Chart::kSu2Polar);
  for (int k = 0; k < 100; ++k) {
    const RVector q = testing::random_polar_point(rng);
    const FisherMatrix h = qfi_pure(family.model(q));
    EXPECT_LT(max_abs(RMatrix(h.entries - polar_closed_form(q))), 1e-10);
  }
}

TEST(QfiPure, MaxEntangledAtIdentity) {
  for (int d = 2; d <= 6; ++d) {
    const ChannelFamily family(max_entangled(d), Chart::kExp);
    const FisherMatrix h = qfi_pure(family.model(RVector::Zero(d * d - 1)));
    EXPECT_LT(max_abs(RMatrix(h.entries - (4.0 / d) * RMatrix::Identity(d * d - 1, d * d - 1))), 1e-10);
  }
}

TEST(QfiPure, SymmetricAndPsdForRandomProbe) {
  Rng rng(2);
  const ChannelFamily family(random_bipartite_state(3, rng), Chart::kExp);
  for (int k = 0; k < 10; ++k) {
    const FisherMatrix h = qfi_pure(family.model(testing::random_exp_point(3, rng)));
    EXPECT_LT(h.symmetry_residual(), 1e-10);
    EXPECT_GE(h.min_eigenvalue(), -1e-9);
  }
}

TEST(QfiPure, MatchesBuresMetric) {
  Rng rng(3);
  std::normal_distribution<double> normal;
  for (int d = 2; d <= 3; ++d) {
    const ChannelFamily family(random_bipartite_state(d, rng), Chart::kExp);
    for (int k = 0; k < 20; ++k) {
      const RVector x = testing::random_exp_point(d, rng);
      RVector delta(x.size());
      for (Index a = 0; a < delta.size(); ++a) delta(a) = normal(rng);
      delta *= 1e-3 / delta.norm();
      const RMatrix h = qfi_pure(family.model(x)).entries;
      const double quadratic = 0.25 * delta.dot(h * delta);
      const double bures = bures_distance_sq(family.output_state(x), family.output_state(x + delta));
      EXPECT_LT(std::abs(bures - quadratic) / quadratic, 1e-2);
    }
  }
}

TEST(Fidelity, Extremes) {
  const CVector psi = singlet().ket();
  EXPECT_NEAR(fidelity_pure(psi, psi), 1.0, 1e-15);
  EXPECT_NEAR(bures_distance_sq(psi, psi), 0.0, 1e-15);
  CVector other = CVector::Zero(4);
  other(0) = 1.0;
  EXPECT_NEAR(fidelity_pure(psi, other), 0.0, 1e-15);
  EXPECT_NEAR(bures_distance_sq(psi, other), 2.0, 1e-15);
}

TEST(SldMixed, DiagonalQubit) {
  const double t = 0.5;
  CMatrix rho = CMatrix::Zero(2, 2);
  rho(0, 0) = (1 + t) / 2;
  rho(1, 1) = (1 - t) / 2;
  CMatrix drho = CMatrix::Zero(2, 2);
  drho(0, 0) = 0.5;
  drho(1, 1) = -0.5;
  const std::vector<CMatrix> slds = sld_mixed(rho, std::vector<CMatrix>{drho});
  ASSERT_EQ(slds.size(), 1u);
  EXPECT_NEAR(slds[0](0, 0).real(), 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(slds[0](1, 1).real(), -2.0, 1e-14);
  EXPECT_LT(std::abs(slds[0](0, 1)), 1e-14);
  // Lyapunov residual on a generic full-rank state.
  Rng rng(5);
  const Povm wishart = random_povm(3, 2, rng);
  const CMatrix sigma = wishart[0].matrix / wishart[0].matrix.trace();
  CMatrix dsigma = wishart[1].matrix - wishart[1].matrix.trace().real() / 3.0 * CMatrix::Identity(3, 3);
  const std::vector<CMatrix> lam = sld_mixed(sigma, std::vector<CMatrix>{dsigma});
  EXPECT_LT(max_abs(CMatrix(0.5 * (sigma * lam[0] + lam[0] * sigma) - dsigma)), 1e-12);
}

TEST(SldMixed, StaticMaximallyMixedState) {
  const CMatrix rho = CMatrix::Identity(3, 3) / 3.0;
  const std::vector<CMatrix> zeros(2, CMatrix::Zero(3, 3));
  for (const CMatrix& lam : sld_mixed(rho, zeros)) EXPECT_LT(max_abs(lam), 1e-15);
}

TEST(SldMixed, PureStateReducesToTwiceDerivative) {
  Rng rng(6);
  const ChannelFamily family(random_bipartite_state(2, rng), Chart::kExp);
  for (int k = 0; k < 10; ++k) {
    const OutputModel model = family.model(testing::random_exp_point(2, rng));
    const std::vector<CMatrix> slds = sld_mixed(model.rho, model.drho);
    for (int a = 0; a < model.num_params(); ++a) {
      EXPECT_LT(max_abs(CMatrix(slds[a] - 2.0 * model.drho[a])), 1e-9);
    }
    EXPECT_LT(max_abs(RMatrix(qfi_mixed(model.rho, slds).entries - qfi_pure(model).entries)), 1e-8);
  }
}

TEST(SldMixed, KernelWeightIsIllPosed) {
  CMatrix rho = CMatrix::Zero(2, 2);
  rho(0, 0) = 1.0;
  CMatrix drho = CMatrix::Zero(2, 2);
  drho(1, 1) = 1.0;
  EXPECT_THROW(sld_mixed(rho, std::vector<CMatrix>{drho}), IllPosedError);
}

TEST(ClassicalFi, TrivialPovmCarriesNoInformation) {
  const ChannelFamily family(singlet(), Chart::kSu2Polar);
  const OutputModel model = family.model(testing::polar(0.7, 1.1, 0.4));
  const Povm trivial = Povm::from_matrices({CMatrix::Identity(4, 4)});
  EXPECT_LT(max_abs(classical_fi(model, trivial).entries), 1e-15);
  EXPECT_LT(max_abs(classical_fi(model.rho, model.drho, trivial).entries), 1e-15);
}

TEST(ClassicalFi, BellBasisEqualsQfiOnGrid) {
  const ChannelFamily family(singlet(), Chart::kSu2Polar);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      for (int k = 0; k < 5; ++k) {
        const RVector q = testing::polar(0.2 + 2.7 * (i + 0.5) / 5, 0.2 + 2.7 * (j + 0.5) / 5,
                                         0.1 + 6.0 * (k + 0.5) / 5);
        const OutputModel model = family.model(q);
        const FisherMatrix h = qfi_pure(model);
        EXPECT_LT(max_abs(RMatrix(classical_fi(model, bell_basis()).entries - h.entries)), 1e-9);
        EXPECT_NEAR(evaluate_merit(model, bell_basis()).value, 3.0, 1e-9);
      }
    }
  }
}

TEST(ClassicalFi, PureAndDensityPathsAgree) {
  Rng rng(8);
  for (int d = 2; d <= 3; ++d) {
    const ChannelFamily family(random_bipartite_state(d, rng), Chart::kExp);
    const OutputModel model = family.model(testing::random_exp_point(d, rng));
    const Povm povm = random_povm(d * d, 5, rng);
    EXPECT_LT(max_abs(RMatrix(classical_fi(model, povm).entries -
                              classical_fi(model.rho, model.drho, povm).entries)),
              1e-10);
  }
}

TEST(ClassicalFi, TimeShareIsWeightedSum) {
  const ChannelFamily family(singlet(), Chart::kSu2Polar);
  const OutputModel model = family.model(testing::polar(0.8, 1.3, 2.0));
  const std::vector<Povm> parts{reduced_bell(1), linear_optics_bell(2, 3), random_product_povm(2, 2, 9)};
  const std::vector<double> weights{0.2, 0.5, 0.3};
  RMatrix expected = RMatrix::Zero(3, 3);
  for (std::size_t k = 0; k < parts.size(); ++k) expected += weights[k] * classical_fi(model, parts[k]).entries;
  const FisherMatrix shared = classical_fi(model, time_shared(parts, weights));
  EXPECT_LT(max_abs(RMatrix(shared.entries - expected)), 1e-10);
}

TEST(ClassicalFi, TwoCopyDistributionDoublesInformation) {
  const ChannelFamily family(singlet(), Chart::kSu2Polar);
  const OutputModel model = family.model(testing::polar(0.9, 1.2, 0.7));
  const Povm povm = linear_optics_bell(1, 4);
  const RVector p = outcome_probabilities(model.rho, povm);
  RMatrix dp(p.size(), 3);
  for (Index x = 0; x < p.size(); ++x) {
    for (int a = 0; a < 3; ++a) dp(x, a) = trace_product(model.drho[a], povm[x].matrix).real();
  }
  const Index n = p.size();
  RVector p2(n * n);
  RMatrix dp2(n * n, 3);
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      p2(x * n + y) = p(x) * p(y);
      dp2.row(x * n + y) = dp.row(x) * p(y) + p(x) * dp.row(y);
    }
  }
  const RMatrix single = classical_fi_from_distribution(p, dp).entries;
  EXPECT_LT(max_abs(RMatrix(single - classical_fi(model, povm).entries)), 1e-12);
  EXPECT_LT(max_abs(RMatrix(classical_fi_from_distribution(p2, dp2).entries - 2.0 * single)), 1e-10);
}

TEST(ClassicalFi, VanishingOutcomes) {
  RVector p(2);
  p << 1.0, 0.0;
  RMatrix dp = RMatrix::Zero(2, 1);
  EXPECT_LT(max_abs(classical_fi_from_distribution(p, dp).entries), 1e-15);
  dp << -1.0, 1.0;
  try {
    classical_fi_from_distribution(p, dp);
    FAIL() << "expected SingularOutcomeError";
  } catch (const SingularOutcomeError& e) {
    EXPECT_EQ(e.outcome(), Index{1});
  }
}

TEST(ClassicalFi, RefinementIncreasesInformation) {
  Rng rng(10);
  std::uniform_int_distribution<int> pick_dim(2, 3);
  for (int k = 0; k < 50; ++k) {
    const int d = pick_dim(rng);
    const Povm fine = random_product_povm(d, 1 + k % 3, 500 + k);
    std::uniform_int_distribution<std::size_t> pick(0, fine.size() - 1);
    std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    while (j == i) j = pick(rng);
    const Povm coarse = merge_elements(fine, i, j);
    const Povm refined = refine_separable(coarse);
    EXPECT_EQ(refined.size(), fine.size());
    const ChannelFamily family(max_entangled(d), Chart::kExp);
    const OutputModel model = family.model(testing::random_exp_point(d, rng, 0.5));
    const RMatrix diff = classical_fi(model, refined).entries - classical_fi(model, coarse).entries;
    EXPECT_GE(min_eigenvalue(diff), -1e-9);
    const double fine_merit = evaluate_merit(model, refined).value;
    EXPECT_NEAR(fine_merit, d * (d - 1) / 2.0, 1e-9);
    EXPECT_LE(evaluate_merit(model, coarse).value, fine_merit + 1e-9);
  }
}

TEST(Merit, NamedFamiliesWithSinglet) {
  const ChannelFamily family(singlet(), Chart::kSu2Polar);
  Rng rng(11);
  for (int n = 0; n < 5; ++n) {
    const OutputModel model = family.model(testing::random_polar_point(rng));
    for (int k = 1; k <= 4; ++k) {
      EXPECT_NEAR(evaluate_merit(model, reduced_bell(k)).value, 1.0, 1e-9);
      EXPECT_EQ(classical_fi(model, reduced_bell(k)).rank(), 1);
    }
    const FisherMatrix lo = classical_fi(model, linear_optics_bell(1, 2));
    EXPECT_NEAR(evaluate_merit(model, linear_optics_bell(1, 2)).value, 2.0, 1e-9);
    EXPECT_EQ(lo.rank(), 2);
    EXPECT_NEAR(evaluate_merit(model, local_spin_povm()).value, 1.0, 1e-9);
    EXPECT_EQ(classical_fi(model, local_spin_povm()).rank(), 3);
  }
}

TEST(Merit, RejectsSingularQfi) {
  FisherMatrix h{RMatrix::Identity(2, 2), FisherKind::kQuantum};
  h.entries(1, 1) = 1e-12;
  const FisherMatrix i{RMatrix::Zero(2, 2), FisherKind::kClassical};
  try {
    merit(h, i);
    FAIL() << "expected SingularMatrixError";
  } catch (const SingularMatrixError& e) {
    EXPECT_NEAR(e.min_eigenvalue(), 1e-12, 1e-20);
  }
}

TEST(Merit, GeneralWeightMonotoneInPsdOrder) {
  Rng rng(12);
  for (int k = 0; k < 50; ++k) {
    const Index p = 3 + k % 3;
    const FisherMatrix h{random_psd(p, rng) + RMatrix::Identity(p, p), FisherKind::kQuantum};
    const RMatrix i1 = random_psd(p, rng);
    const RMatrix i2 = i1 + random_psd(p, rng);
    const RMatrix g = random_psd(p, rng);
    const MeritReport m1 = merit(h, FisherMatrix{i1, FisherKind::kClassical}, g);
    const MeritReport m2 = merit(h, FisherMatrix{i2, FisherKind::kClassical}, g);
    EXPECT_EQ(m1.weight, MeritWeight::kGeneral);
    EXPECT_NEAR(m1.value, (g * i1).trace(), 1e-9 * (1 + std::abs(m1.value)));
    EXPECT_LE(m1.value, m2.value + 1e-9);
  }
  const FisherMatrix h{RMatrix::Identity(2, 2), FisherKind::kQuantum};
  const FisherMatrix i{RMatrix::Identity(2, 2), FisherKind::kClassical};
  EXPECT_THROW(merit(h, i, RMatrix(-RMatrix::Identity(2, 2))), DomainError);
}

TEST(Merit, InvariantUnderReparametrization) {
  Rng rng(13);
  std::normal_distribution<double> normal;
  const ChannelFamily polar_family(singlet(), Chart::kSu2Polar);
  const ChannelFamily exp_family(singlet(), Chart::kExp);
  for (int k = 0; k < 20; ++k) {
    const RVector q = testing::random_polar_point(rng);
    const OutputModel polar_model = polar_family.model(q);
    const OutputModel exp_model = exp_family.model(su2_polar_to_exp(q(0), q(1), q(2)));
    EXPECT_LT((polar_model.psi - exp_model.psi).cwiseAbs().maxCoeff(), 1e-12);
    const Povm povm = random_product_povm(2, 1, 40 + k);
    const Eigen::Matrix3d j = su2_polar_to_exp_jacobian(q(0), q(1), q(2));
    const FisherMatrix h_exp = qfi_pure(exp_model);
    EXPECT_LT(max_abs(RMatrix(j.transpose() * h_exp.entries * j - qfi_pure(polar_model).entries)), 1e-9);
    EXPECT_NEAR(evaluate_merit(polar_model, povm).value, evaluate_merit(exp_model, povm).value, 1e-9);

    RMatrix random_jacobian(3, 3);
    for (Index a = 0; a < 9; ++a) random_jacobian(a) = normal(rng);
    const FisherMatrix i_exp = classical_fi(exp_model, povm);
    const FisherMatrix h2{random_jacobian.transpose() * h_exp.entries * random_jacobian, FisherKind::kQuantum};
    const FisherMatrix i2{random_jacobian.transpose() * i_exp.entries * random_jacobian, FisherKind::kClassical};
    EXPECT_NEAR(merit(h2, i2).value, merit(h_exp, i_exp).value, 1e-9);
  }
}

TEST(Qcrb, HoldsOnRandomCases) {
  Rng rng(14);
  std::uniform_int_distribution<int> pick_dim(2, 4);
  for (int k = 0; k < 200; ++k) {
    const int d = pick_dim(rng);
    const ChannelFamily family(random_bipartite_state(d, rng), Chart::kExp);
    const OutputModel model = family.model(testing::random_exp_point(d, rng));
    const Povm povm = random_povm(d * d, 2 + k % 20, rng);
    ASSERT_GT(qfi_pure(model).min_eigenvalue(), 1e-6);
    const FisherMatrix h = qfi_pure(model);
    const FisherMatrix i = classical_fi(model, povm);
    const QcrbVerdict verdict = qcrb_check(h, i);
    EXPECT_TRUE(verdict.holds) << verdict.min_eigenvalue;
    EXPECT_LE(merit(h, i).value, d * d - 1 + 1e-8);
  }
}

TEST(Qcrb, BoundaryCases) {
  const ChannelFamily family(singlet(), Chart::kSu2Polar);
  const OutputModel model = family.model(testing::polar(1.0, 0.9, 0.3));
  const FisherMatrix h = qfi_pure(model);
  EXPECT_NEAR(qcrb_check(h, classical_fi(model, bell_basis())).min_eigenvalue, 0.0, 1e-9);
  const QcrbVerdict zero = qcrb_check(h, FisherMatrix{RMatrix::Zero(3, 3), FisherKind::kClassical});
  EXPECT_NEAR(zero.min_eigenvalue, h.min_eigenvalue(), 1e-12);
  EXPECT_TRUE(zero.holds);
}

TEST(Achievability, MaximallyEntangledHasNoGap) {
  Rng rng(15);
  for (int d = 2; d <= 4; ++d) {
    const ChannelFamily family(max_entangled(d), Chart::kExp);
    for (int k = 0; k < 10; ++k) {
      const AchievabilityGap gap = achievability_gap(family.model(testing::random_exp_point(d, rng)));
      EXPECT_LT(gap.max_abs, 1e-10);
    }
  }
}

TEST(Achievability, CommutatorFormulaAtIdentity) {
  Rng rng(16);
  for (int d = 2; d <= 4; ++d) {
    for (int k = 0; k < 10; ++k) {
      const BipartiteState probe = random_bipartite_state(d, rng);
      const ChannelFamily family(probe, Chart::kExp);
      const AchievabilityGap gap = achievability_gap(family.model(RVector::Zero(d * d - 1)));
      EXPECT_LT(max_abs(RMatrix(gap.matrix + gap.matrix.transpose())), 1e-15);
      EXPECT_LT(max_abs(RMatrix(gap.matrix - commutator_gap(probe, family.basis()))), 1e-10);
      if (probe.entanglement_deviation() > 1e-3) {
        EXPECT_GT(gap.max_abs, 1e-8);
      }
    }
  }
}

TEST(Achievability, UnevenSchmidtCoefficients) {
  CMatrix r = CMatrix::Zero(3, 3);
  r(0, 0) = std::sqrt(0.5);
  r(1, 1) = std::sqrt(0.3);
  r(2, 2) = std::sqrt(0.2);
  const BipartiteState probe(r);
  const ChannelFamily family(probe, Chart::kExp);
  EXPECT_GT(achievability_gap(family.model(RVector::Zero(8))).max_abs, 1e-3);
  EXPECT_GT(max_abs(commutator_gap(probe, family.basis())), 1e-3);
}

TEST(Achievability, NonMaximalInputsAwayFromIdentity) {
  Rng rng(17);
  for (int k = 0; k < 30; ++k) {
    const BipartiteState probe = random_bipartite_state(2 + k % 2, rng);
    if (probe.entanglement_deviation() <= 1e-3) continue;
    const ChannelFamily family(probe, Chart::kExp);
    const AchievabilityGap gap = achievability_gap(family.model(testing::random_exp_point(probe.dim(), rng)));
    EXPECT_GT(gap.max_abs, 1e-8);
  }
}

}  // namespace
}  // namespace uniest

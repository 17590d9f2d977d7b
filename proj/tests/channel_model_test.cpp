// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <numbers>

#include "test_helpers.hpp"
#include "uniest/channel_model.hpp"

namespace uniest {
namespace {

CMatrix second_reduced(const CVector& psi, Index d) {
  const CMatrix m = unflatten_row_major(psi, d, d);
  return m.transpose() * m.conjugate();
}

TEST(BipartiteState, MaxEntangled) {
  for (int d = 2; d <= 5; ++d) {
    const BipartiteState s = max_entangled(d);
    EXPECT_LT(max_abs(CMatrix(s.reduced() - CMatrix::Identity(d, d) / d)), 1e-15);
    EXPECT_NEAR(s.reduced().trace().real(), 1.0, 1e-15);
    EXPECT_TRUE(s.maximally_entangled());
    EXPECT_LT(s.reduced_components(gellmann_basis(d)).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(BipartiteState, Singlet) {
  const BipartiteState s = singlet();
  const CVector ket = s.ket();
  EXPECT_NEAR(std::abs(ket(0)), 0.0, 1e-15);                 // |00>
  EXPECT_NEAR(ket(1).real(), -1.0 / std::numbers::sqrt2, 1e-15);  // |01>
  EXPECT_NEAR(ket(2).real(), 1.0 / std::numbers::sqrt2, 1e-15);   // |10>
  EXPECT_LT(max_abs(CMatrix(s.reduced() - CMatrix::Identity(2, 2) / 2.0)), 1e-15);
  EXPECT_TRUE(s.maximally_entangled());
}

TEST(BipartiteState, RejectsUnnormalizedAmplitudes) {
  EXPECT_THROW(BipartiteState(CMatrix::Identity(2, 2)), DomainError);
  EXPECT_THROW(BipartiteState(CMatrix::Identity(2, 3) / std::sqrt(2.0)), DomainError);
  EXPECT_NO_THROW(BipartiteState::normalized(CMatrix::Identity(3, 3)));
}

TEST(BipartiteState, RandomStatesAreNotMaximallyEntangled) {
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const BipartiteState s = random_bipartite_state(3, rng);
    EXPECT_NEAR(s.reduced().trace().real(), 1.0, 1e-12);
    EXPECT_FALSE(s.maximally_entangled());
  }
}

TEST(OutputModel, DerivativeAtIdentityIsGeneratorAction) {
  for (int d = 2; d <= 4; ++d) {
    const BipartiteState probe = max_entangled(d);
    const GeneratorBasis basis = gellmann_basis(d);
    const ChannelFamily family(probe, Chart::kExp);
    const OutputModel model = family.model(RVector::Zero(d * d - 1));
    EXPECT_LT((model.psi - probe.ket()).cwiseAbs().maxCoeff(), 1e-15);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      // i sum_kl R_kl T_a|k> (x) |l>
      CVector expected = CVector::Zero(d * d);
      for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
          CVector ek = CVector::Zero(d);
          ek(k) = 1.0;
          CVector el = CVector::Zero(d);
          el(l) = 1.0;
          const CVector tk = basis[a] * ek;
          for (int k2 = 0; k2 < d; ++k2) expected(k2 * d + l) += kI * probe.amplitudes()(k, l) * tk(k2);
        }
      }
      EXPECT_LT((model.dpsi[a] - expected).cwiseAbs().maxCoeff(), 1e-15);
    }
  }
}

TEST(OutputModel, SecondSubsystemUntouched) {
  Rng rng(17);
  const ChannelFamily family(singlet(), Chart::kSu2Polar);
  const CMatrix before = second_reduced(singlet().ket(), 2);
  for (int k = 0; k < 20; ++k) {
    const OutputModel model = family.model(testing::random_polar_point(rng));
    EXPECT_LT(max_abs(CMatrix(second_reduced(model.psi, 2) - before)), 1e-14);
  }
}

TEST(OutputModel, InvariantsAtRandomPoints) {
  Rng rng(4);
  for (int d = 2; d <= 4; ++d) {
    const ChannelFamily family(random_bipartite_state(d, rng), Chart::kExp);
    for (int k = 0; k < 50; ++k) {
      const OutputModel model = family.model(testing::random_exp_point(d, rng));
      EXPECT_NEAR(model.psi.norm(), 1.0, 1e-12);
      EXPECT_LT(model_residual(model), 1e-10);
      EXPECT_LT(max_abs(CMatrix(model.rho - projector(model.psi))), 1e-12);
      for (int a = 0; a < model.num_params(); ++a) {
        const CMatrix expected = outer(model.dpsi[a], model.psi) + outer(model.psi, model.dpsi[a]);
        EXPECT_LT(max_abs(CMatrix(model.drho[a] - expected)), 1e-12);
      }
    }
  }
}

TEST(OutputModel, RejectsDimensionMismatch) {
  std::vector<CMatrix> du{CMatrix::Zero(3, 3)};
  EXPECT_THROW(output_model(CMatrix::Identity(3, 3), du, singlet()), DomainError);
}

TEST(ChannelFamily, PolarChartNeedsQubits) {
  EXPECT_THROW(ChannelFamily(max_entangled(3), Chart::kSu2Polar), DomainError);
  const ChannelFamily family(singlet(), Chart::kSu2Polar);
  EXPECT_EQ(family.num_params(), 3);
  EXPECT_THROW(family.model(testing::polar(0.0, 1.0, 1.0)), DomainError);
  EXPECT_THROW(family.model(RVector::Zero(2)), DomainError);
}

TEST(ChannelFamily, ExpChartStopsAtGeneratorSpreadTwoPi) {
  const ChannelFamily family(singlet(), Chart::kExp);
  // T_3 = sigma_z / sqrt 2, so x_3 = c spreads the spectrum by c sqrt 2.
  RVector x = RVector::Zero(3);
  x(2) = 2.0 * std::numbers::pi / std::numbers::sqrt2 - 0.01;
  EXPECT_TRUE(family.in_domain(x));
  EXPECT_NO_THROW(family.model(x));
  x(2) += 0.02;
  EXPECT_FALSE(family.in_domain(x));
  EXPECT_THROW(family.model(x), DomainError);
}

TEST(PauliOutputDensity, MatchesOutputModel) {
  Rng rng(21);
  const ChannelFamily family(singlet(), Chart::kSu2Polar);
  for (int k = 0; k < 20; ++k) {
    const RVector q = testing::random_polar_point(rng);
    const DensityJet jet = pauli_output_density(q(0), q(1), q(2));
    const OutputModel model = family.model(q);
    EXPECT_LT(max_abs(CMatrix(jet.rho - model.rho)), 1e-10);
    for (int i = 0; i < 3; ++i) EXPECT_LT(max_abs(CMatrix(jet.partials[i] - model.drho[i])), 1e-10);
    EXPECT_NEAR(jet.rho.trace().real(), 1.0, 1e-10);
    EXPECT_LT(max_abs(CMatrix(jet.rho * jet.rho - jet.rho)), 1e-10);
  }
}

TEST(PauliOutputDensity, NearIdentityApproachesSingletLinearly) {
  const CMatrix singlet_proj = projector(singlet().ket());
  const double e1 = max_abs(CMatrix(pauli_output_density(1e-3, 1.0, 0.4).rho - singlet_proj));
  const double e2 = max_abs(CMatrix(pauli_output_density(5e-4, 1.0, 0.4).rho - singlet_proj));
  EXPECT_LT(e1, 1e-3);
  EXPECT_NEAR(e1 / e2, 2.0, 1e-2);
}

TEST(PauliOutputDensity, RejectsBoundary) {
  EXPECT_THROW(pauli_output_density(1.0, 0.0, 0.0), DomainError);
}

TEST(HeisenbergCoefficients, ISigmaXConjugation) {
  const Eigen::Matrix3d m = heisenberg_coefficients(std::numbers::pi / 2, std::numbers::pi / 2, 0.0);
  EXPECT_LT((m - Eigen::Vector3d(1, -1, -1).asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff(), 1e-12);
  const CMatrix u = kI * pauli()[0];
  EXPECT_LT((testing::heisenberg_by_trace(u) - m).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(HeisenbergCoefficients, RotationMatchingDirectTrace) {
  Rng rng(77);
  for (int k = 0; k < 50; ++k) {
    const RVector q = testing::random_polar_point(rng);
    const Eigen::Matrix3d m = heisenberg_coefficients(q(0), q(1), q(2));
    EXPECT_LT((m.transpose() * m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(m.determinant(), 1.0, 1e-10);
    const CMatrix u = su2_polar(q(0), q(1), q(2)).value;
    EXPECT_LT((testing::heisenberg_by_trace(u) - m).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(OutcomeProbabilities, TrivialPovm) {
  const Povm trivial = Povm::from_matrices({CMatrix::Identity(4, 4)});
  const RVector p = outcome_probabilities(projector(singlet().ket()), trivial);
  ASSERT_EQ(p.size(), 1);
  EXPECT_NEAR(p(0), 1.0, 1e-15);
}

TEST(OutcomeProbabilities, SingletOutcomeDominatesNearIdentity) {
  const ChannelFamily family(singlet(), Chart::kSu2Polar);
  const RVector p = outcome_probabilities(family.model(testing::polar(1e-4, 1.0, 0.5)).rho, bell_basis());
  EXPECT_GT(p(3), 0.9999);
  EXPECT_NEAR(p.sum(), 1.0, 1e-12);
}

TEST(OutcomeProbabilities, ProductPovmClosedForm) {
  Rng rng(31);
  const ChannelFamily family(singlet(), Chart::kSu2Polar);
  const auto bloch = [](const CVector& ket) {
    Eigen::Vector3d v;
    for (int i = 0; i < 3; ++i) v(i) = ket.dot(pauli()[i] * ket).real();
    return v;
  };
  for (int k = 0; k < 10; ++k) {
    const Povm povm = random_product_povm(2, 2, 100 + k);
    const RVector q = testing::random_polar_point(rng);
    const RVector p = outcome_probabilities(family.model(q).rho, povm);
    const Eigen::Vector3d n = polar_axis(q(1), q(2));
    const double alpha = q(0);
    for (std::size_t x = 0; x < povm.size(); ++x) {
      const ProductTerm& t = povm[x].product.front();
      const Eigen::Vector3d a = bloch(t.a);
      const Eigen::Vector3d b = bloch(t.b);
      const double closed = t.weight / 4.0 *
                            (1.0 - std::cos(2 * alpha) * a.dot(b) + std::sin(2 * alpha) * b.cross(a).dot(n) -
                             2.0 * std::pow(std::sin(alpha), 2) * n.dot(a) * n.dot(b));
      EXPECT_NEAR(p(static_cast<Index>(x)), closed, 1e-12);
    }
  }
}

TEST(OutcomeProbabilities, RejectsMismatchAndInvalidPovm) {
  const CMatrix rho = projector(singlet().ket());
  EXPECT_THROW(outcome_probabilities(rho, random_product_povm(3, 1, 1)), DomainError);
  const Povm half = Povm::from_matrices({CMatrix(0.5 * CMatrix::Identity(4, 4))});
  EXPECT_THROW(outcome_probabilities(rho, half), DomainError);
}

TEST(OutcomeProbabilities, SumToOneEverywhere) {
  Rng rng(9);
  for (int d = 2; d <= 4; ++d) {
    const ChannelFamily family(random_bipartite_state(d, rng), Chart::kExp);
    for (int k = 0; k < 10; ++k) {
      const Povm povm = random_povm(d * d, 3 + k, rng);
      const RVector p = outcome_probabilities(family.model(testing::random_exp_point(d, rng)).rho, povm);
      EXPECT_NEAR(p.sum(), 1.0, 1e-10);
      EXPECT_GE(p.minCoeff(), -1e-12);
    }
  }
}

}  // namespace
}  // namespace uniest

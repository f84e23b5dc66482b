// Copyright 2026 The stabchan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stabchan/stabilizer.hpp"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "stabchan/scattering.hpp"
#include "test_util.hpp"

namespace stabchan {
namespace {

using testing::diag;
using testing::Rng;

StabilizerTarget target_a() {
  return StabilizerTarget(DensityMatrix(diag({0.75, 0.25})));
}
StabilizerTarget target_3() {
  return StabilizerTarget(DensityMatrix(diag({0.5, 0.3, 0.2})));
}

TEST(StabilizerTarget, Basics) {
  const StabilizerTarget t = target_a();
  EXPECT_DOUBLE_EQ(t.lambda_max(), 0.75);
  EXPECT_LT(max_abs(t.v_max() - ComplexVector::Unit(2, 0)), 1e-15);
  EXPECT_FALSE(t.degenerate());
  EXPECT_TRUE(t.warnings().empty());

  const StabilizerTarget half(DensityMatrix::maximally_mixed(2));
  EXPECT_TRUE(half.degenerate());
  EXPECT_EQ(half.warnings().size(), 1u);
  EXPECT_LT(max_abs(half.v_max() - ComplexVector::Unit(2, 0)), 1e-15);
}

TEST(MinChoi, Examples) {
  const ChoiMatrix z = min_choi(target_a());
  EXPECT_LT(max_abs(z.matrix() - diag({1, 0, 1.0 / 3, 0})), 1e-15);
  EXPECT_NEAR(z.matrix().trace().real(), 4.0 / 3, 1e-15);

  ComplexVector v(2);
  v << 1.0 / std::sqrt(2.0), Complex(0, 1.0 / std::sqrt(2.0));
  const DensityMatrix pure = DensityMatrix::pure(v);
  const StabilizerTarget tp(pure);
  const ComplexMatrix expected = kron(pure.matrix(), pure.matrix().transpose());
  EXPECT_LT(max_abs(min_choi(tp).matrix() - expected), 1e-14);
  EXPECT_NEAR(min_choi(tp).matrix().trace().real(), 1.0, 1e-14);

  const StabilizerTarget half(DensityMatrix::maximally_mixed(2));
  const ChoiMatrix zh = min_choi(half);
  EXPECT_LT(max_abs(zh.matrix() - diag({1, 0, 1, 0})), 1e-15);
  EXPECT_NEAR(zh.matrix().trace().real(), 2.0, 1e-15);
}

TEST(MinKraus, Examples) {
  const KrausSet k = min_kraus(target_a());
  ASSERT_EQ(k.size(), 2u);
  ComplexMatrix a1 = ComplexMatrix::Zero(2, 2);
  a1(1, 0) = std::sqrt(1.0 / 3);
  EXPECT_LT(max_abs(k.operators()[0] - testing::basis_projector(2, 0)), 1e-15);
  EXPECT_LT(max_abs(k.operators()[1] - a1), 1e-15);

  Rng rng(20);
  const DensityMatrix pure = testing::random_pure(rng, 3);
  const KrausSet kp = min_kraus(StabilizerTarget(pure));
  ASSERT_EQ(kp.size(), 1u);
  EXPECT_LT(max_abs(kp.operators()[0] - pure.matrix()), 1e-12);

  const KrausSet k3 = min_kraus(target_3());
  ASSERT_EQ(k3.size(), 3u);
  EXPECT_NEAR(k3.operators()[0].norm(), 1.0, 1e-15);
  EXPECT_NEAR(k3.operators()[1].norm(), std::sqrt(0.6), 1e-15);
  EXPECT_NEAR(k3.operators()[2].norm(), std::sqrt(0.4), 1e-15);
}

TEST(MinKraus, CompletenessDefect) {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const StabilizerTarget t(testing::random_density(rng, 2 + trial % 4));
    const ComplexVector v = t.v_max();
    EXPECT_LT(max_abs(min_kraus(t).completeness() - v * v.adjoint() / t.lambda_max()),
              1e-10);
  }
}

TEST(AncillaDilation, Examples) {
  EXPECT_EQ(ancilla_dilation(KrausSet({ComplexMatrix::Identity(2, 2)})),
            ComplexMatrix(ComplexMatrix::Identity(2, 2)));

  const ComplexMatrix a = ancilla_dilation(min_kraus(target_a()));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = 1.0;
  expected(3, 2) = std::sqrt(1.0 / 3);
  EXPECT_LT(max_abs(a - expected), 1e-15);

  EXPECT_THROW(ancilla_dilation(KrausSet({ComplexMatrix::Zero(2, 3)})),
               DimensionMismatch);
}

TEST(TpFamilyChoi, Examples) {
  const ChoiMatrix c = tp_family_choi(target_a(), DensityMatrix::maximally_mixed(2));
  EXPECT_LT(max_abs(c.matrix() - diag({5.0 / 6, 0.5, 1.0 / 6, 0.5})), 1e-15);
  EXPECT_TRUE(is_trace_preserving(c).trace_preserving);
  EXPECT_TRUE(is_completely_positive(c).completely_positive);
  EXPECT_LT(max_abs(apply_choi(c, target_a().sigma()).matrix() - diag({0.75, 0.25})),
            1e-15);

  const DensityMatrix sigma(diag({0.75, 0.25}));
  const ChoiMatrix replacement = tp_family_choi(target_a(), sigma);
  EXPECT_LT(max_abs(replacement.matrix() -
                    kron(sigma.matrix(), ComplexMatrix::Identity(2, 2))),
            1e-15);

  const ChoiMatrix gap = tp_family_choi(target_3(), DensityMatrix(diag({0, 1, 0})));
  EXPECT_TRUE(is_trace_preserving(gap).trace_preserving);
  const PositivityCheck cp = is_completely_positive(gap);
  EXPECT_FALSE(cp.completely_positive);
  EXPECT_NEAR(cp.min_eigenvalue, -0.4, 1e-12);

  EXPECT_THROW(tp_family_choi(target_a(), DensityMatrix(diag({0.9, 0.1}))),
               DomainViolation);
  EXPECT_THROW(FamilyChannel(target_a(), DensityMatrix(diag({0.9, 0.1}))),
               DomainViolation);
}

TEST(ApplyFamily, Examples) {
  const FamilyChannel fam(target_a(), DensityMatrix::maximally_mixed(2));
  EXPECT_NEAR(fam.overlap_q(), 2.0 / 3, 1e-15);
  EXPECT_LT(max_abs(apply_family(fam, diag({0.75, 0.25})).state.matrix() -
                    diag({0.75, 0.25})),
            1e-15);
  const FamilyStep s = apply_family(fam, diag({0, 1}));
  EXPECT_EQ(s.overlap_p, 0.0);
  EXPECT_LT(max_abs(s.state.matrix() - diag({0.5, 0.5})), 1e-15);

  const FamilyChannel flat(target_a(), DensityMatrix(diag({0, 1})));
  EXPECT_LT(max_abs(apply_family(flat, diag({0.5, 0.5})).state.matrix() -
                    diag({0.5, 0.5})),
            1e-15);
}

TEST(ApplyFamily, DomainViolation) {
  const FamilyChannel fam(target_a(), DensityMatrix::maximally_mixed(2));
  EXPECT_THROW(apply_family(fam, diag({1, 0})), DomainViolation);
  const FamilyStep s = apply_family(fam, diag({1, 0}), /*strict=*/false);
  EXPECT_TRUE(s.domain_violation);
  EXPECT_NEAR(s.overlap_p, 4.0 / 3, 1e-15);
  // (4/3) sigma - (1/3) I/2
  EXPECT_LT(max_abs(s.state.matrix() - diag({1.0 - 1.0 / 6, 1.0 / 3 - 1.0 / 6})),
            1e-15);
}

TEST(ApplyFamily, AgreesWithChoiRoute) {
  Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 2 + trial % 4;
    const StabilizerTarget t(testing::random_density(rng, d));
    const FamilyChannel fam(t, testing::random_valid_completion(rng, t));
    const ComplexMatrix rho = testing::random_density(rng, d).matrix();
    const FamilyStep s = apply_family(fam, rho, false);
    ASSERT_LE(max_abs(s.state.matrix() - apply_choi(fam.choi(), rho)), 1e-10);
  }
}

TEST(Iterate, ConvergenceFixture) {
  const FamilyChannel fam(target_a(), DensityMatrix::maximally_mixed(2));
  const IterationTrace tr = iterate(fam, DensityMatrix(diag({0, 1})), 20);
  ASSERT_EQ(tr.steps.size(), 21u);
  EXPECT_LT(max_abs(tr.steps[1].state.matrix() - diag({0.5, 0.5})), 1e-15);
  EXPECT_LT(max_abs(tr.steps[2].state.matrix() - diag({2.0 / 3, 1.0 / 3})), 1e-12);
  EXPECT_NEAR(tr.steps[2].dist_to_sigma, 1.0 / 12, 1e-12);
  EXPECT_NEAR(tr.steps[2].weight_B, 1.0 / 9, 1e-12);
  for (int n = 0; n <= 20; ++n) {
    EXPECT_NEAR(tr.steps[n].weight_B, std::pow(1.0 / 3, n), 1e-9) << n;
  }
  EXPECT_LE(tr.steps[20].dist_to_sigma, 1e-8);
  EXPECT_TRUE(tr.converged(1e-8));
  EXPECT_FALSE(tr.stagnant);
}

TEST(Iterate, StartingAtSigmaStaysPut) {
  Rng rng(23);
  const StabilizerTarget t(testing::random_density(rng, 3));
  const FamilyChannel fam(t, testing::random_valid_completion(rng, t));
  const IterationTrace tr = iterate(fam, t.sigma(), 10);
  for (const auto& s : tr.steps) {
    EXPECT_LT(s.dist_to_sigma, 1e-12);
    EXPECT_NEAR(s.state.trace().real(), 1.0, 1e-12);
  }
}

TEST(Iterate, ZeroOverlapCompletionStagnates) {
  const FamilyChannel fam(target_a(), DensityMatrix(diag({0, 1})));
  EXPECT_EQ(fam.overlap_q(), 0.0);
  const IterationTrace tr = iterate(fam, DensityMatrix::maximally_mixed(2), 10);
  EXPECT_TRUE(tr.stagnant);
  for (const auto& s : tr.steps) {
    EXPECT_LT(max_abs(s.state.matrix() - diag({0.5, 0.5})), 1e-15);
  }
  // The long-window detector fires on its own as well.
  const IterationTrace longer =
      iterate(fam, DensityMatrix::maximally_mixed(2), kStagnationWindow + 5);
  EXPECT_TRUE(longer.stagnant);
}

TEST(Iterate, WeightLawAndMonotoneDistance) {
  Rng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 2 + trial % 4;
    const StabilizerTarget t(testing::random_density(rng, d));
    const FamilyChannel fam(t, testing::random_valid_completion(rng, t));
    // Start inside the domain: mix a random state with sigma until p <= 1.
    DensityMatrix rho0 = testing::random_density(rng, d);
    if (t.overlap_ratio(rho0.matrix()) > 1.0) {
      const ComplexVector w = complement_basis(t).col(0);
      rho0 = DensityMatrix(ComplexMatrix(0.5 * w * w.adjoint() + 0.5 * rho0.matrix()));
    }
    const double p0 = t.overlap_ratio(rho0.matrix());
    if (p0 > 1.0) continue;
    const double q = fam.overlap_q();
    const IterationTrace tr = iterate(fam, rho0, 30);
    for (size_t n = 0; n < tr.steps.size(); ++n) {
      ASSERT_NEAR(tr.steps[n].weight_B,
                  std::pow(1.0 - q, static_cast<double>(n)) * (1.0 - p0), 1e-9);
      if (n > 0) {
        const double p_prev = tr.steps[n - 1].p_n;
        ASSERT_NEAR(tr.steps[n].p_n, p_prev + q * (1.0 - p_prev), 1e-9);
      }
      if (n > 1) {
        ASSERT_LE(tr.steps[n].dist_to_sigma, tr.steps[n - 1].dist_to_sigma + 1e-12);
      }
    }
  }
}

TEST(Iterate, FreeEvolutionInterleaves) {
  const FamilyChannel fam(target_a(), DensityMatrix::maximally_mixed(2));
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  const HermitianMatrix h(x);
  const std::vector<double> taus = {0.2, 0.5, 0.1};
  const IterationTrace tr = iterate(fam, DensityMatrix(diag({0, 1})), 3,
                                    FreeEvolution{h, taus});
  ComplexMatrix rho = diag({0, 1});
  for (int n = 0; n < 3; ++n) {
    const double p = rho(0, 0).real() / 0.75;
    rho = p * diag({0.75, 0.25}) + (1 - p) * diag({0.5, 0.5});
    // exp(-i tau X) = cos(tau) I - i sin(tau) X
    const double tau = taus[static_cast<size_t>(n)];
    const ComplexMatrix u = std::cos(tau) * ComplexMatrix::Identity(2, 2) -
                            Complex(0, std::sin(tau)) * x;
    rho = u * rho * u.adjoint();
    EXPECT_LT(max_abs(tr.steps[static_cast<size_t>(n + 1)].state.matrix() - rho),
              1e-13);
  }
  EXPECT_THROW(iterate(fam, DensityMatrix(diag({0, 1})), 2, FreeEvolution{h, taus}),
               InvalidInput);
}

TEST(ExtractCompletion, Examples) {
  const DensityMatrix half = DensityMatrix::maximally_mixed(2);
  const DensityMatrix b =
      extract_completion(tp_family_choi(target_a(), half), target_a());
  EXPECT_LT(max_abs(b.matrix() - half.matrix()), 1e-12);

  const DensityMatrix sigma(diag({0.75, 0.25}));
  const ChoiMatrix replacement(kron(sigma.matrix(), ComplexMatrix::Identity(2, 2)), 2, 2);
  EXPECT_LT(max_abs(extract_completion(replacement, target_a()).matrix() -
                    sigma.matrix()),
            1e-12);

  const CollisionSpec pswap(partial_swap(M_PI / 4, 2), sigma, 2);
  EXPECT_THROW(extract_completion(collision_choi(pswap), target_a()), NotInFamily);
}

TEST(IsInFamily, Examples) {
  EXPECT_FALSE(is_in_family(ChoiMatrix::identity(2), target_a()).member);
  const FamilyMembership z = is_in_family(min_choi(target_a()), target_a());
  EXPECT_FALSE(z.member);
  EXPECT_FALSE(z.reason.empty());
}

TEST(IsInFamily, RoundTripRecoversCompletion) {
  Rng rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 2 + trial % 5;
    const StabilizerTarget t(testing::random_density(rng, d));
    const DensityMatrix b = testing::random_valid_completion(rng, t);
    const FamilyMembership m = is_in_family(tp_family_choi(t, b), t);
    ASSERT_TRUE(m.member) << m.reason;
    ASSERT_LE(max_abs(m.completion->matrix() - b.matrix()), 1e-9);
  }
}

TEST(Lossless, Examples) {
  EXPECT_TRUE(is_lossless(target_a().sigma(), target_a()));
  EXPECT_FALSE(is_lossless(DensityMatrix::maximally_mixed(2), target_a()));

  const std::vector<double> one = {1.0};
  const DensityMatrix same =
      make_lossless_state(target_a(), one, ComplexMatrix::Identity(1, 1));
  EXPECT_LT(max_abs(same.matrix() - diag({0.75, 0.25})), 1e-15);
  EXPECT_TRUE(is_lossless(same, target_a()));

  const StabilizerTarget t4(DensityMatrix(diag({0.6, 0.25, 0.1, 0.05})));
  const std::vector<double> lambda = {0.5, 0.3, 0.2};
  const DensityMatrix rho =
      make_lossless_state(t4, lambda, ComplexMatrix::Identity(3, 3));
  EXPECT_LT(max_abs(rho.matrix() - diag({0.6, 0.2, 0.12, 0.08})), 1e-15);

  Rng rng(26);
  const DensityMatrix rotated =
      make_lossless_state(t4, lambda, testing::random_unitary(rng, 3));
  const RealVector ev = hermitian_eigenvalues(rotated.matrix());
  EXPECT_NEAR(ev(3), 0.6, 1e-12);
  EXPECT_NEAR(ev(2), 0.2, 1e-12);
  EXPECT_NEAR(ev(1), 0.12, 1e-12);
  EXPECT_NEAR(ev(0), 0.08, 1e-12);
  EXPECT_NEAR(rotated.matrix()(0, 0).real(), 0.6, 1e-12);
  EXPECT_TRUE(is_lossless(rotated, t4));
}

TEST(Lossless, Validation) {
  const StabilizerTarget t4(DensityMatrix(diag({0.6, 0.25, 0.1, 0.05})));
  const ComplexMatrix id3 = ComplexMatrix::Identity(3, 3);
  const std::vector<double> negative = {1.2, -0.2, 0.0};
  const std::vector<double> short_sum = {0.5, 0.3, 0.1};
  const std::vector<double> wrong_len = {0.5, 0.5};
  const std::vector<double> ok = {0.5, 0.3, 0.2};
  EXPECT_THROW(make_lossless_state(t4, negative, id3), InvalidInput);
  EXPECT_THROW(make_lossless_state(t4, short_sum, id3), InvalidInput);
  EXPECT_THROW(make_lossless_state(t4, wrong_len, id3), DimensionMismatch);
  EXPECT_THROW(make_lossless_state(t4, ok, ComplexMatrix(2.0 * id3)), InvalidInput);

  const StabilizerTarget low(DensityMatrix(diag({0.4, 0.3, 0.2, 0.1})));
  EXPECT_NO_THROW(make_lossless_state(low, ok, id3));
  EXPECT_THROW(make_lossless_state(low, ok, id3, /*require_majority=*/true),
               InvalidInput);
}

TEST(StabilizerProperties, ExactStabilizationAndTrace) {
  Rng rng(27);
  for (int trial = 0; trial < 500; ++trial) {
    const Index d = 2 + trial % 5;
    const StabilizerTarget t(testing::random_density(rng, d));
    const ChoiMatrix z = min_choi(t);
    ASSERT_LE(max_abs(apply_choi(z, t.sigma()).matrix() - t.sigma().matrix()),
              1e-10);
    ASSERT_NEAR(z.matrix().trace().real(), 1.0 / t.lambda_max(), 1e-12);
  }
}

TEST(StabilizerProperties, KrausChoiDilationAgree) {
  Rng rng(28);
  for (int trial = 0; trial < 200; ++trial) {
    const Index d = 2 + trial % 4;
    const StabilizerTarget t(testing::random_density(rng, d));
    const KrausSet k = min_kraus(t);
    ASSERT_LE(max_abs(kraus_to_choi(k).matrix() - min_choi(t).matrix()), 1e-10);
    const ComplexMatrix rho = testing::random_density(rng, d).matrix();
    const ComplexMatrix via_kraus = apply_kraus(k, rho);
    const ComplexMatrix via_choi = apply_choi(min_choi(t), rho);
    const ComplexMatrix via_dilation =
        apply_dilation(ancilla_dilation(k), static_cast<Index>(k.size()), rho);
    ASSERT_LE(max_abs(via_kraus - via_choi), 1e-10);
    ASSERT_LE(max_abs(via_kraus - via_dilation), 1e-12);
  }
}

TEST(StabilizerProperties, FamilyFixedPoint) {
  Rng rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const Index d = 2 + trial % 5;
    const StabilizerTarget t(testing::random_density(rng, d));
    const ChoiMatrix c = tp_family_choi(t, testing::random_valid_completion(rng, t));
    ASSERT_LE(max_abs(apply_choi(c, t.sigma()).matrix() - t.sigma().matrix()), 1e-9);
    ASSERT_LE(is_trace_preserving(c).defect, 1e-10);
  }
}

TEST(StabilizerProperties, LosslessStatesKeepTrace) {
  Rng rng(30);
  for (int trial = 0; trial < 200; ++trial) {
    const Index d = 2 + trial % 5;
    const StabilizerTarget t(testing::random_density(rng, d));
    std::vector<double> lambda(static_cast<size_t>(d - 1));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double sum = 0.0;
    for (auto& x : lambda) sum += (x = u(rng));
    for (auto& x : lambda) x /= sum;
    const DensityMatrix rho =
        make_lossless_state(t, lambda, testing::random_unitary(rng, d - 1));
    ASSERT_TRUE(is_lossless(rho, t));
    ASSERT_NEAR(apply_choi(min_choi(t), rho).trace().real(), 1.0, 1e-10);
  }
}

}  // namespace
}  // namespace stabchan

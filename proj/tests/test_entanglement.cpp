#include <gtest/gtest.h>

#include "support.hpp"

using namespace qdisc;
using namespace qdisc::testing;

TEST(PartialTranspose, MatchesLoopOracle) {
  std::mt19937_64 rng(50);
  for (int d : {3, 4}) {
    const GellMannBasis b(d);
    const int n = b.size();
    const TwoQuditState s =
        assemble(b, random_vector(n, rng, 0.05), random_vector(n, rng, 0.05), random_matrix(n, rng, 0.05));
    EXPECT_LT(max_abs(CMatrix(partial_transpose(s.rho(), d) - loop_partial_transpose(s.rho(), d))), 1e-15);
    // PT on B maps K to K I0
    const TwoQuditState pt = from_density(b, partial_transpose(s.rho(), d));
    EXPECT_LT(max_abs(RMatrix(pt.K() - s.K() * transposition_matrix(b))), 1e-12);
  }
  EXPECT_THROW(partial_transpose(identity(8), 3), DimensionError);
}

TEST(Realignment, IndexMapAndProductStates) {
  const int d = 3;
  std::mt19937_64 rng(51);
  const CMatrix rho = hermitian_part(CMatrix::Random(9, 9));
  const CMatrix r = realignment(rho, d);
  for (int m = 0; m < d; ++m)
    for (int mu = 0; mu < d; ++mu)
      for (int n = 0; n < d; ++n)
        for (int nu = 0; nu < d; ++nu) EXPECT_EQ(r(m * d + mu, n * d + nu), rho(m * d + n, mu * d + nu));
  const GellMannBasis b(3);
  const CMatrix prod = kron(one_qudit_state(b, random_vector(8, rng, 0.05)), one_qudit_state(b, random_vector(8, rng, 0.05)));
  EXPECT_LT(realignment_negativity(prod, d), 1e-12);
}

TEST(Negativity, BellAndIsotropic) {
  for (int d : {3, 4}) {
    const GellMannBasis b(d);
    EXPECT_NEAR(negativity(bell_projector(b, {1, 2}).rho(), d), (d - 1) / 2.0, 1e-10);
    EXPECT_NEAR(realignment_negativity(bell_projector(b, {0, 0}).rho(), d), (d - 1) / 2.0, 1e-10);
    EXPECT_NEAR(negativity(identity(d * d) / double(d * d), d), 0.0, 1e-15);
    // isotropic: PPT exactly up to p = 1/(d+1)
    EXPECT_GE(min_pt_eigenvalue(isotropic(b, 1.0 / (d + 1)).rho(), d), -1e-12);
    EXPECT_LT(min_pt_eigenvalue(isotropic(b, 1.0 / (d + 1) + 0.01).rho(), d), 0.0);
  }
}

TEST(Negativity, PairAndLineMixtures) {
  const GellMannBasis b(3);
  std::mt19937_64 rng(52);
  for (int r = 0; r < 10; ++r) {
    const auto w = random_weights(2, rng);
    const TwoQuditState s = bell_diagonal(b, {{{0, 0}, w[0]}, {{2, 2}, w[1]}});
    EXPECT_NEAR(negativity(s.rho(), 3), std::sqrt(1 - 3 * w[0] * w[1]), 1e-8);
    const auto v = random_weights(3, rng);
    const TwoQuditState l = bell_diagonal(b, {{{0, 0}, v[0]}, {{1, 1}, v[1]}, {{2, 2}, v[2]}});
    const double sq = std::pow(v[0] - v[1], 2) + std::pow(v[0] - v[2], 2) + std::pow(v[1] - v[2], 2);
    EXPECT_NEAR(negativity(l.rho(), 3), std::sqrt(0.5 * sq), 1e-8);
  }
}

TEST(Reduction, BellProjectorViolatesProductDoesNot) {
  const GellMannBasis b(3);
  EXPECT_LT(reduction_criterion(bell_projector(b, {0, 0}).rho(), 3), -0.5);
  EXPECT_GE(reduction_criterion(identity(9) / 9.0, 3), 0.0);
}

TEST(GurvitsBarnum, Threshold) {
  for (int d : {3, 4}) {
    const GellMannBasis b(d);
    const int n = b.size();
    const double t = d / (2.0 * (d * d - 1));
    EXPECT_TRUE(gurvits_barnum(lmm_state(b, RMatrix(t * RMatrix::Identity(n, n))).rho(), d));
    EXPECT_FALSE(gurvits_barnum(lmm_state(b, RMatrix(1.1 * t * RMatrix::Identity(n, n))).rho(), d));
  }
}

TEST(Report, InvariantsHold) {
  const GellMannBasis b(3);
  for (double p : {0.0, 0.2, 0.3, 0.6, 1.0}) {
    const EntanglementReport r = entanglement_report(isotropic(b, p).rho(), 3);
    if (r.negativity > 1e-9) EXPECT_FALSE(r.ppt);
    if (r.gurvits_barnum_separable) {
      EXPECT_LT(r.negativity, 1e-9);
      EXPECT_LT(r.realignment_negativity, 1e-9);
    }
  }
}

TEST(PptBoundary, WernerAndIsotropic) {
  const GellMannBasis b(3);
  const DensityFamily werner = correlation_family(b, RMatrix::Identity(8, 8));
  EXPECT_NEAR(ppt_boundary(werner, 3, {-0.75, 0.0}), -3.0 / 16, 1e-9);
  const Interval w = ppt_range(werner, 3);
  EXPECT_NEAR(w.lo, -3.0 / 16, 1e-12);
  EXPECT_NEAR(w.hi, 3.0 / 8, 1e-12);
  const DensityFamily iso = correlation_family(b, transposition_matrix(b));
  EXPECT_NEAR(ppt_boundary(iso, 3, {0.0, 1.5}), 3.0 / 8, 1e-9);
  EXPECT_THROW(ppt_boundary(iso, 3, {0.0, 0.2}), InvalidInput);
}

#include <gtest/gtest.h>

#include "support.hpp"

using namespace qdisc;
using namespace qdisc::testing;

TEST(Frame, CanonicalProjector) {
  const GellMannBasis b(3);
  const MeasurementFrame f = canonical_frame(b);
  for (int j = 0; j < 8; ++j)
    for (int k = 0; k < 8; ++k)
      EXPECT_EQ(f.P_real(j, k), (j == k && (j == 2 || j == 7)) ? 1.0 : 0.0);
  EXPECT_NEAR(canonical_frame(GellMannBasis(4)).M_real.trace(), 12.0, 1e-12);
}

TEST(Frame, InvariantsForRandomUnitaries) {
  std::mt19937_64 rng(9);
  for (int d : {3, 4, 5}) {
    const Algebra alg(d);
    for (int r = 0; r < 10; ++r) {
      const MeasurementFrame f = frame_from_unitary(alg.basis, random_special_unitary(alg.basis, rng));
      CMatrix sum = CMatrix::Zero(d, d);
      for (int j = 0; j < d; ++j) {
        sum += f.projectors[j];
        for (int k = 0; k < d; ++k) {
          const CMatrix pp = f.projectors[j] * f.projectors[k];
          EXPECT_LT(max_abs(CMatrix(pp - (j == k ? f.projectors[j] : CMatrix::Zero(d, d)))), 1e-10);
        }
      }
      EXPECT_LT(max_abs(CMatrix(sum - identity(d))), 1e-10);
      EXPECT_LT(max_abs(RMatrix(f.P_real * f.P_real - f.P_real)), 1e-10);
      EXPECT_NEAR(f.P_real.trace(), d - 1, 1e-10);
      EXPECT_NEAR(f.M_real.trace(), d * (d - 1), 1e-10);
      for (int j = 0; j < alg.n(); ++j) EXPECT_NEAR((f.M_real * alg.tensors.Delta[j]).trace(), 0.0, 1e-10);
    }
  }
  EXPECT_THROW(frame_from_unitary(GellMannBasis(3), CMatrix(2.0 * identity(3))), InvalidInput);
}

TEST(ApplyMeasurement, BellProjectorAndIdempotence) {
  const GellMannBasis b(3);
  const MeasurementFrame f = canonical_frame(b);
  const CMatrix out = apply_measurement(bell_projector(b, {0, 0}), f);
  CMatrix classical = CMatrix::Zero(9, 9);
  for (int k = 0; k < 3; ++k) classical(k * 3 + k, k * 3 + k) = 1.0 / 3.0;
  EXPECT_LT(max_abs(CMatrix(out - classical)), 1e-12);
  EXPECT_NEAR(trace_norm_hermitian(disturbance(bell_projector(b, {0, 0}), f)), 4.0 / 3.0, 1e-12);

  std::mt19937_64 rng(1);
  const MeasurementFrame g = frame_from_unitary(b, random_special_unitary(b, rng));
  const TwoQuditState s = assemble(b, random_vector(8, rng, 0.05), random_vector(8, rng, 0.05),
                                   random_matrix(8, rng, 0.05));
  const CMatrix once = apply_measurement(s, g);
  EXPECT_LT(max_abs(CMatrix(apply_measurement(once, g) - once)), 1e-12);
  EXPECT_TRUE(validate(once).physical);
  const CMatrix mm = identity(9) / 9.0;
  EXPECT_LT(max_abs(CMatrix(apply_measurement(mm, g) - mm)), 1e-15);
}

TEST(Disturbance, CoherenceFormula) {
  std::mt19937_64 rng(6);
  for (int d : {3, 4}) {
    const GellMannBasis b(d);
    const int n = b.size();
    for (int r = 0; r < 10; ++r) {
      const TwoQuditState s =
          assemble(b, random_vector(n, rng, 0.05), random_vector(n, rng, 0.05), random_matrix(n, rng, 0.05));
      const MeasurementFrame f = frame_from_unitary(b, random_special_unitary(b, rng));
      const CMatrix direct = disturbance(s, f);
      EXPECT_LT(max_abs(CMatrix(direct - disturbance_from_coherence(b, s, f))), 1e-12);
      EXPECT_LT(hermiticity_defect(direct), 1e-14);
      EXPECT_LT(std::abs(direct.trace()), 1e-14);
      // marginal over B vanishes for LMM input
      const TwoQuditState l = lmm_state(b, s.K());
      EXPECT_LT(max_abs(partial_trace_a(disturbance(l, f), d)), 1e-14);
      EXPECT_LT(max_abs(partial_trace_b(disturbance(l, f), d)), 1e-14);
    }
  }
}

TEST(QPaths, ExpansionMatchesDirectForRandomK) {
  std::mt19937_64 rng(31);
  for (int d : {3, 4}) {
    const Algebra alg(d);
    const int n = alg.n();
    for (int r = 0; r < 50; ++r) {
      const RMatrix K = random_matrix(n, rng, 0.1);
      const MeasurementFrame f = frame_from_unitary(alg.basis, random_special_unitary(alg.basis, rng));
      const CMatrix direct = q_matrix(disturbance(lmm_state(alg.basis, K), f));
      ASSERT_LT(max_abs(CMatrix(q_lmm_expansion(alg, K, f) - direct)), 1e-10);
      const double dd = d;
      ASSERT_NEAR(direct.trace().real(), 4.0 / std::pow(dd, 4) * (K * K.transpose() * f.M_real).trace(), 1e-12);
    }
  }
  EXPECT_THROW(q_lmm_expansion(Algebra(3), assemble(GellMannBasis(3), RVector::Ones(8) * 0.01, RVector::Zero(8),
                                                    RMatrix::Zero(8, 8)),
                               canonical_frame(GellMannBasis(3))),
               InvalidInput);
}

TEST(QPaths, OrthogonalKFormMatchesDirect) {
  std::mt19937_64 rng(32);
  for (int d : {3, 4}) {
    const Algebra alg(d);
    const int n = alg.n();
    for (int r = 0; r < 50; ++r) {
      const RMatrix v0 = random_orthogonal(n, rng);
      const double t = 0.3;
      const MeasurementFrame f = frame_from_unitary(alg.basis, random_special_unitary(alg.basis, rng));
      const CMatrix direct = q_matrix(disturbance(lmm_state(alg.basis, RMatrix(t * v0)), f));
      const Theorem3Terms q3 = q_theorem3(alg, t, v0, f);
      ASSERT_LT(max_abs(CMatrix(q3.Q - direct)), 1e-10);
    }
    // V0 = 𝕀 gives X = 0 for any frame
    const MeasurementFrame f = frame_from_unitary(alg.basis, random_special_unitary(alg.basis, rng));
    EXPECT_LT(max_abs(q_theorem3(alg, 1.0, RMatrix::Identity(n, n), f).X), 1e-12);
    EXPECT_LT(max_abs(q_theorem3(alg, 1.0, transposition_matrix(alg.basis), f).X), 1e-12);
  }
  EXPECT_THROW(q_theorem3(Algebra(3), 1.0, RMatrix(2.0 * RMatrix::Identity(8, 8)), canonical_frame(GellMannBasis(3))),
               InvalidInput);
}

TEST(QClosedForms, MatchDirectQ) {
  std::mt19937_64 rng(33);
  for (int d : {3, 4, 5}) {
    const Algebra alg(d);
    const GellMannBasis& b = alg.basis;
    for (int r = 0; r < 10; ++r) {
      const CMatrix v = random_special_unitary(b, rng), v2 = random_special_unitary(b, rng);
      const MeasurementFrame f = frame_from_unitary(b, random_special_unitary(b, rng));
      const double t = 0.1;
      const CMatrix qa = q_matrix(disturbance(class_a_state(b, v, t), f));
      ASSERT_LT(max_abs(CMatrix(q_class_a(alg, t, f, v) - qa)), 1e-10);
      const CMatrix qaa = q_matrix(disturbance(class_aa_state(b, v, v2, t), f));
      ASSERT_LT(max_abs(CMatrix(q_class_aa(alg, t, f, v, v2) - qaa)), 1e-10);
    }
  }
}

TEST(QClosedForms, SpectraAreFrameIndependent) {
  std::mt19937_64 rng(34);
  for (int d : {3, 4}) {
    const Algebra alg(d);
    const GellMannBasis& b = alg.basis;
    const double t = 0.2;
    const CMatrix v = random_special_unitary(b, rng), v2 = random_special_unitary(b, rng);
    const RVector sa = hermitian_eigenvalues(q_class_a(alg, t, canonical_frame(b), v));
    const RVector saa = hermitian_eigenvalues(q_class_aa(alg, t, canonical_frame(b), v, v2));
    for (int r = 0; r < 50; ++r) {
      const MeasurementFrame f = frame_from_unitary(b, random_special_unitary(b, rng));
      ASSERT_LT(max_abs(RVector(hermitian_eigenvalues(q_class_a(alg, t, f, v)) - sa)), 1e-10);
      ASSERT_LT(max_abs(RVector(hermitian_eigenvalues(q_class_aa(alg, t, f, v, v2)) - saa)), 1e-10);
    }
  }
}

TEST(QMatrix, SchattenRelations) {
  std::mt19937_64 rng(35);
  const GellMannBasis b(3);
  const TwoQuditState s = lmm_state(b, random_matrix(8, rng, 0.1));
  const MeasurementFrame f = frame_from_unitary(b, random_special_unitary(b, rng));
  const CMatrix sm = disturbance(s, f);
  const CMatrix q = q_matrix(sm);
  EXPECT_NEAR(q.trace().real(), sm.squaredNorm(), 1e-14);
  const double trsqrt = trace_sqrt_psd(q);
  EXPECT_NEAR(trsqrt, trace_norm_hermitian(sm), 1e-10);
  EXPECT_GE(trsqrt + 1e-12, std::sqrt(q.trace().real()));
}

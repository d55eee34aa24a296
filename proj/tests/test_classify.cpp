#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace qdisc;
using namespace qdisc::testing;

namespace {

const std::vector<SpectralClassRecord>& classes() {
  static const std::vector<SpectralClassRecord> c = group_isospectral(GellMannBasis(3));
  return c;
}

const SpectralClassRecord& find(const std::string& id) {
  for (const auto& r : classes())
    if (r.class_id == id) return r;
  throw std::runtime_error("missing class " + id);
}

const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);

}  // namespace

TEST(SignMatrix, ParsingAndAlgebra) {
  const SignMatrix m = SignMatrix::from_string("+-++-+-+");
  EXPECT_EQ(m, transposition_signs());
  EXPECT_EQ(m.str(), "+-++-+-+");
  EXPECT_EQ(m * m, identity_signs());
  EXPECT_EQ((-m).str(), "-+--+-+-");
  EXPECT_THROW(SignMatrix::from_string("+-+"), InvalidInput);
  EXPECT_THROW(SignMatrix::from_string("+-++-+-x"), InvalidInput);
}

TEST(Enumeration, AllDistinct) {
  const auto all = enumerate_sign_states();
  EXPECT_EQ(all.size(), 256u);
  EXPECT_EQ(std::set<SignMatrix>(all.begin(), all.end()).size(), 256u);
  EXPECT_EQ(all.front(), identity_signs());
}

TEST(AffineSpectrum, MatchesDensityEigenvalues) {
  const GellMannBasis b(3);
  std::mt19937_64 rng(60);
  const auto all = enumerate_sign_states();
  for (int r = 0; r < 20; ++r) {
    const SignMatrix& m = all[rng() % 256];
    const double t = 0.1;
    const RVector ev = hermitian_eigenvalues(sign_family(b, m)(t));
    const RVector pred = (RVector::Ones(9) + t * affine_spectrum(b, m)) / 9.0;
    EXPECT_LT(sorted_diff(ev, pred), 1e-12);
  }
}

TEST(LocalOrbit, SizeFourAndIsospectral) {
  const GellMannBasis b(3);
  for (const SignMatrix& m : {identity_signs(), transposition_signs(), SignMatrix::from_string("++++-+-+")}) {
    const auto orbit = local_orbit(b, m);
    EXPECT_EQ(std::set<SignMatrix>(orbit.begin(), orbit.end()).size(), 4u);
    for (const SignMatrix& x : orbit) EXPECT_LT(max_abs(RVector(affine_spectrum(b, x) - affine_spectrum(b, m))), 1e-12);
  }
}

TEST(Isospectral, SixteenClassesWithTabulatedSizes) {
  ASSERT_EQ(classes().size(), 16u);
  const std::map<int, int> sizes{{1, 32}, {2, 16}, {3, 16}, {4, 28}, {5, 12}, {6, 16}, {7, 4}, {8, 4}};
  int total = 0;
  for (const auto& r : classes()) {
    ASSERT_GT(r.index, 0) << r.class_id;
    EXPECT_EQ(static_cast<int>(r.members.size()), sizes.at(r.index)) << r.class_id;
    total += static_cast<int>(r.members.size());
    // mirror class is the same family at -t
    const SpectralClassRecord& other = find("E" + std::to_string(r.index) + (r.mirror ? "" : "'"));
    EXPECT_NEAR(other.t_range.lo, -r.t_range.hi, 1e-12);
  }
  EXPECT_EQ(total, 256);
}

TEST(Isospectral, ClosedFormRanges) {
  const auto check = [](const std::string& id, double lo, double hi, double tol) {
    const Interval r = find(id).t_range;
    EXPECT_NEAR(r.lo, lo, tol) << id;
    EXPECT_NEAR(r.hi, hi, tol) << id;
  };
  check("E1", -3.0 / 8, 3.0 / 10, 1e-9);
  check("E2", -3.0 / 8, 3.0 / 10, 1e-9);
  check("E3", -3.0 / 4, 3.0 / 8, 1e-9);
  check("E4", -3.0 / (6 * s2 + 4), 3.0 / 8, 1e-9);
  check("E5", -3.0 / 8, 3.0 / 10, 1e-9);
  check("E6", -0.3163, 0.3404, 1e-3);
  check("E7", -3.0 / 16, 3.0 / 2, 1e-9);
  check("E8", -3.0 / (6 * s3 + 2), 3.0 / (6 * s3 - 2), 1e-9);
}

TEST(Isospectral, PptBoundaries) {
  const auto orbit = [](const std::string& id, int k) { return find(id).orbits.at(k - 1).ppt_range; };
  EXPECT_NEAR(orbit("E1", 1).lo, -3.0 / (2 + 6 * s3), 1e-6);
  for (int k = 2; k <= 8; ++k) EXPECT_NEAR(orbit("E1", k).hi, 3.0 / (4 + 6 * s2), 1e-6);
  for (int k = 1; k <= 4; ++k) EXPECT_NEAR(orbit("E2", k).lo, -0.316, 1e-3);
  EXPECT_NEAR(orbit("E3", 1).lo, -3.0 / 16, 1e-6);
  for (int k = 2; k <= 4; ++k) EXPECT_NEAR(orbit("E3", k).lo, -3.0 / 10, 1e-6);
  for (int k = 1; k <= 4; ++k) EXPECT_NEAR(orbit("E6", k).hi, 3.0 / 10, 1e-6);
  EXPECT_NEAR(find("E6").t_range.hi, 0.3404, 1e-3);
  EXPECT_NEAR(orbit("E8", 1).hi, 3.0 / 10, 1e-6);
  EXPECT_NEAR(find("E8").t_range.hi, 3.0 / (6 * s3 - 2), 1e-9);
  EXPECT_NEAR(orbit("E7", 1).hi, 3.0 / 8, 1e-6);
}

TEST(Isospectral, PptBoundaryAgreesWithBisection) {
  const GellMannBasis b(3);
  const DensityFamily fam = sign_family(b, transposition_signs());
  EXPECT_NEAR(ppt_boundary(fam, 3, {0.0, 1.5}), 3.0 / 8, 1e-9);
}

TEST(Isospectral, SeparabilityIndicatorsForE4E5) {
  for (const char* id : {"E4", "E5", "E4'", "E5'"}) {
    EXPECT_TRUE(find(id).negativity_zero) << id;
    EXPECT_TRUE(find(id).realignment_zero) << id;
  }
  EXPECT_FALSE(find("E3").negativity_zero);
}

TEST(JordanGood, FourAndFour) {
  const Algebra alg(3);
  const JordanGoodSet g = jordan_good_matrices(alg);
  EXPECT_TRUE(g.classifier_agrees);
  ASSERT_EQ(g.automorphisms.size(), 4u);
  ASSERT_EQ(g.anti_automorphisms.size(), 4u);
  EXPECT_NE(std::find(g.automorphisms.begin(), g.automorphisms.end(), identity_signs()), g.automorphisms.end());
  EXPECT_NE(std::find(g.anti_automorphisms.begin(), g.anti_automorphisms.end(), transposition_signs()),
            g.anti_automorphisms.end());
  // the automorphism class is the local orbit of the identity
  const auto orbit = local_orbit(alg.basis, identity_signs());
  EXPECT_EQ(std::set<SignMatrix>(orbit.begin(), orbit.end()),
            std::set<SignMatrix>(g.automorphisms.begin(), g.automorphisms.end()));
}

TEST(La3La8, HoldsForGoodFailsForBad) {
  const GellMannBasis b(3);
  std::mt19937_64 rng(61);
  for (const SignMatrix& m : jordan_good_matrices(Algebra(3)).automorphisms)
    EXPECT_LT(la3la8_check(b, m, 20, rng).max_residual, 1e-10);
  EXPECT_GT(la3la8_check(b, SignMatrix::from_string("+++++++-"), 20, rng).max_residual, 1e-3);
}

TEST(TabulatedData, KnownConflictsAreReported) {
  const AppendixCReport rep = appendix_c_report(Algebra(3), 0);
  EXPECT_TRUE(rep.counts_match);
  auto mentions = [&](const std::string& needle) {
    for (const auto& c : rep.conflicts)
      if (c.find(needle) != std::string::npos) return true;
    return false;
  };
  EXPECT_TRUE(mentions("(2+8t)/27"));
  EXPECT_TRUE(mentions("(2+3t)/27"));
  EXPECT_TRUE(mentions("E2: tabulated t-range"));
  EXPECT_TRUE(mentions("multiplicity 2, computed 3"));
  EXPECT_EQ(rep.conflicts.size(), 8u);
}

TEST(TabulatedData, WeylAdjointFixtures) {
  const AppendixBReport rep = verify_appendix_b(GellMannBasis(3));
  EXPECT_EQ(rep.entries.size(), 8u);
  ASSERT_EQ(rep.tabulated_duplicates.size(), 1u);
  EXPECT_EQ(rep.tabulated_duplicates[0].first, (BellLabel{0, 1}));
  EXPECT_EQ(rep.tabulated_duplicates[0].second, (BellLabel{1, 0}));
  EXPECT_TRUE(rep.computed_duplicates.empty());
  // every tabulated matrix is some adjoint Weyl matrix or its transpose
  for (const auto& e : rep.entries) EXPECT_FALSE(e.equals.empty()) << label_string(e.label);
  // entries that match directly
  int direct = 0;
  for (const auto& e : rep.entries)
    if (e.matches) ++direct;
  EXPECT_EQ(direct, rep.direct_matches);
}

TEST(E7, ReductionCriterionSignChange) {
  const GellMannBasis b(3);
  const DensityFamily fam = sign_family(b, transposition_signs());
  for (int i = 1; i <= 10; ++i) {
    const double t = 3.0 / 8 + (1.5 - 3.0 / 8) * i / 10.0;
    EXPECT_LT(reduction_criterion(fam(t), 3), 0.0) << t;
    const double s = -3.0 / 16 + (3.0 / 8 + 3.0 / 16) * (i - 1) / 9.0;
    EXPECT_GE(reduction_criterion(fam(s), 3), -1e-12) << s;
  }
}

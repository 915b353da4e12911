#include <gtest/gtest.h>

#include "generators.hpp"

using namespace limop;

namespace {

PolytopeDomain simplex2() { return build_K(jn_basis_sequence(2), 2); }

// {p >= 0, p0 + p1 <= 1}
bool in_simplex2(double a, double b) { return a >= -1e-12 && b >= -1e-12 && a + b <= 1.0 + 1e-12; }

}  // namespace

TEST(Polytope, MembershipMatchesHalfspaces) {
  const auto k = simplex2();
  for (int i = -4; i <= 8; ++i)
    for (int j = -4; j <= 8; ++j) {
      const double a = i / 8.0, b = j / 8.0;
      const TruncatedVector p({a, b}, SpaceTag::l1_dual());
      EXPECT_EQ(k.contains(p), in_simplex2(a, b)) << a << "," << b;
    }
}

TEST(Polytope, WeightGridPointsAreMembers) {
  // every convex combination on a weight grid lies in K
  const auto k = build_K(jn_basis_sequence(3), 3);
  const int m = 8;
  for (int a = 0; a <= m; ++a)
    for (int b = 0; a + b <= m; ++b)
      for (int c = 0; a + b + c <= m; ++c) {
        const std::vector<double> w{a / double(m), b / double(m), c / double(m), (m - a - b - c) / double(m)};
        EXPECT_TRUE(k.contains(k.combine(w)));
      }
}

TEST(Polytope, DistanceClosedForms) {
  const auto k = simplex2();
  EXPECT_NEAR(k.distance_to(TruncatedVector({1.0, 1.0}, SpaceTag::l1_dual())), std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(k.distance_to(TruncatedVector({-1.0, 0.0}, SpaceTag::l1_dual())), 1.0, 1e-12);
  EXPECT_NEAR(k.distance_to(TruncatedVector({-3.0, -4.0}, SpaceTag::l1_dual())), 5.0, 1e-12);
  EXPECT_EQ(k.distance_to(TruncatedVector({0.25, 0.25}, SpaceTag::l1_dual())), 0.0);
}

TEST(Polytope, VerticesAndOriginAreMembers) {
  const auto k = build_K(jn_basis_sequence(7), 7);
  for (const auto& g : k.generators()) EXPECT_TRUE(k.contains(g));
  EXPECT_EQ(k.max_dual_norm(), 1.0);
  EXPECT_EQ(k.generators().size(), 8u);
}

TEST(Polytope, SegmentForN1) {
  const auto k = build_K(jn_basis_sequence(1), 1);
  EXPECT_TRUE(k.contains(TruncatedVector({0.5}, SpaceTag::l1_dual())));
  EXPECT_FALSE(k.contains(TruncatedVector({1.5}, SpaceTag::l1_dual())));
  EXPECT_FALSE(k.contains(TruncatedVector({-0.5}, SpaceTag::l1_dual())));
}

TEST(Polytope, RejectsPrimalVertices) {
  EXPECT_THROW(PolytopeDomain({TruncatedVector::zeros(2, SpaceTag::c0())}, true), UnsupportedTag);
  EXPECT_THROW(PolytopeDomain({}, false), DimensionError);
}

TEST(Polytope, OriginOnly) {
  const auto k = PolytopeDomain::origin_only(4);
  EXPECT_TRUE(k.contains(TruncatedVector::zeros(4, SpaceTag::l1_dual())));
  EXPECT_FALSE(k.contains(TruncatedVector::basis(4, 1, SpaceTag::l1_dual(), 1e-3)));
}

TEST(Polytope, GeneralVerticesDistanceOracle) {
  // distance to hull of random points never exceeds distance to any generator
  testgen::Gen g(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<TruncatedVector> v;
    for (int i = 0; i < 4; ++i) v.push_back(g.vec(3, SpaceTag::l1_dual()));
    const PolytopeDomain k(v, trial % 2 == 0);
    const auto p = g.vec(3, SpaceTag::l1_dual(), 2.0);
    const double d = k.distance_to(p);
    for (const auto& gen : k.generators()) EXPECT_LE(d, norm_of((p - gen).coords(), NormKind::two) + 1e-12);
    for (const auto& gen : k.generators()) EXPECT_NEAR(k.distance_to(gen), 0.0, 1e-9);
  }
}

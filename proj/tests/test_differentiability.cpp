#include <gtest/gtest.h>

#include "crosscheck_cases.hpp"
#include "generators.hpp"

using namespace limop;

namespace {

TruncatedVector c0(std::vector<double> v) { return TruncatedVector(std::move(v), SpaceTag::c0()); }
TruncatedVector l1(std::vector<double> v) { return TruncatedVector(std::move(v), SpaceTag::l1_dual()); }

ConvexFn basis_pgnf(std::size_t n) {
  return cases::shifted_pgnf(n, TruncatedVector::zeros(n, SpaceTag::l1_dual()));
}

}  // namespace

TEST(ScaleGrid, DyadicDownToFloor) {
  const auto g = default_scale_grid(TruncatedVector::zeros(4, SpaceTag::c0()));
  ASSERT_FALSE(g.empty());
  EXPECT_EQ(g.front(), 1.0);
  const double floor_t = std::sqrt(std::numeric_limits<double>::epsilon());
  EXPECT_GE(g.back(), floor_t);
  EXPECT_LT(g.back() / 2, floor_t);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_EQ(g[i], g[i - 1] / 2);
}

TEST(ScaleGrid, FloorGrowsWithNorm) {
  const auto small = default_scale_grid(c0({0.0, 0.0}));
  const auto big = default_scale_grid(c0({1000.0, 0.0}));
  EXPECT_LT(big.size(), small.size());
}

TEST(ScaleGrid, PgnfWindow) {
  const auto w = pgnf_scale_window(8);
  ASSERT_EQ(w.gateaux_scales.size(), 8u);
  ASSERT_EQ(w.frechet_scales.size(), 8u);
  for (std::size_t j = 0; j < 8; ++j) {
    EXPECT_DOUBLE_EQ(w.gateaux_scales[j], std::pow(2.0, -0.5 * j));
    EXPECT_DOUBLE_EQ(w.frechet_scales[j], std::pow(2.0, 1.0 - 0.5 * j));
  }
}

TEST(Gateaux, SupnormAtUniqueMax) {
  const auto f = supnorm_fn();
  const auto x = c0({1.0, 0.5, 0.25});
  const auto q = l1({1.0, 0.0, 0.0});
  const auto grid = default_scale_grid(x);
  const auto r = gateaux_probe(f, x, q, signed_basis(3, SpaceTag::c0()), grid, 1e-6);
  EXPECT_TRUE(r.pass);
  // once t < 0.5 the maximum stays at coordinate 0, so every quotient is 0
  for (const auto& row : r.table)
    for (const auto& e : row.entries)
      if (e.t < 0.25) EXPECT_NEAR(e.quotient, 0.0, 1e-12);
}

TEST(Gateaux, SupnormAtTieFails) {
  const auto f = supnorm_fn();
  const auto r = gateaux_probe(f, c0({1.0, 1.0}), l1({1.0, 0.0}), signed_basis(2, SpaceTag::c0()),
                               default_scale_grid(c0({1.0, 1.0})), 1e-6);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.max_final_quotient, 1.0, 1e-9);
}

TEST(Gateaux, LinearHasZeroQuotients) {
  testgen::Gen g(11);
  for (int i = 0; i < 10; ++i) {
    const auto p = g.vec(5, SpaceTag::l1_dual(), 2.0);
    const auto x = g.vec(5, SpaceTag::c0(), 3.0);
    const auto r = gateaux_probe(linear_fn(p), x, p, signed_basis(5, SpaceTag::c0()), default_scale_grid(x), 1e-6);
    EXPECT_TRUE(r.pass);
    EXPECT_LE(r.max_final_quotient, 1e-6);
    EXPECT_LE(r.max_asymmetry, 1e-6);
  }
}

TEST(Gateaux, PgnfFlatBelowEachKink) {
  const std::size_t n = 12;
  const auto f = basis_pgnf(n);
  const auto x = TruncatedVector::zeros(n, SpaceTag::c0());
  const auto q = TruncatedVector::zeros(n, SpaceTag::l1_dual());
  const auto w = pgnf_scale_window(n);
  const auto r = gateaux_probe(f, x, q, signed_basis(n, SpaceTag::c0()), w.gateaux_scales, 1e-9);
  EXPECT_TRUE(r.pass);
  // row 2k is +e_k; quotient is max(0, 1 - 2^(-k/2)/t)
  for (std::size_t k = 0; k < n; ++k) {
    const double kink = std::pow(2.0, -0.5 * k);
    for (const auto& e : r.table[2 * k].entries) {
      const double expected = std::max(0.0, 1.0 - kink / e.t);
      EXPECT_NEAR(e.quotient, expected, 1e-12) << "k=" << k << " t=" << e.t;
    }
  }
}

TEST(Gateaux, RejectsBadInputs) {
  const auto f = supnorm_fn();
  const auto x = c0({0.0, 0.0});
  const auto q = l1({0.0, 0.0});
  EXPECT_THROW(gateaux_probe(f, x, q, {c0({2.0, 0.0})}, {1.0, 0.5}, 1e-6), SetupError);
  EXPECT_THROW(gateaux_probe(f, x, q, {c0({1.0, 0.0})}, {0.5, 1.0}, 1e-6), SetupError);
  EXPECT_THROW(gateaux_probe(f, x, q, {c0({1.0, 0.0})}, {}, 1e-6), SetupError);
  ConvexFn bad;
  bad.evaluator = [](const TruncatedVector& v) { return v[0] > 0 ? std::nan("") : 0.0; };
  EXPECT_THROW(gateaux_probe(bad, x, q, {c0({1.0, 0.0})}, {1.0}, 1e-6), NonFinite);
}

TEST(Frechet, SupnormExamples) {
  const auto f = supnorm_fn();
  const auto samples = default_sphere_samples(2, SpaceTag::c0(), 32, 7);
  const auto e = frechet_modulus(f, c0({1.0, 0.5}), l1({1.0, 0.0}), 0.1, samples);
  EXPECT_NEAR(e.sup_quotient, 0.0, 1e-12);
  // at a tie the sample e_1 lifts the sup-norm by t
  const auto tie = frechet_modulus(f, c0({1.0, 1.0}), l1({1.0, 0.0}), 0.1, {c0({0.0, 1.0})});
  EXPECT_NEAR(tie.sup_quotient, 1.0, 1e-12);
}

TEST(Frechet, PgnfWitnessAtHalf) {
  const std::size_t n = 16;
  const auto f = basis_pgnf(n);
  const auto x = TruncatedVector::zeros(n, SpaceTag::c0());
  const auto q = TruncatedVector::zeros(n, SpaceTag::l1_dual());
  for (std::size_t k = 0; k < n; ++k) {
    const double t = std::pow(2.0, 1.0 - 0.5 * k);
    const auto e = frechet_modulus(f, x, q, t, {TruncatedVector::basis(n, k, SpaceTag::c0())});
    EXPECT_NEAR(e.sup_quotient, 0.5, 1e-12);
  }
}

TEST(Frechet, LeadWitnessIsFirstHalfReacher) {
  const auto f = supnorm_fn();
  const std::vector<TruncatedVector> samples{c0({1.0, 0.0}), c0({0.0, 1.0}), c0({1.0, 1.0})};
  const auto e = frechet_modulus(f, c0({1.0, 1.0}), l1({0.5, 0.5}), 0.1, samples);
  EXPECT_NEAR(e.sup_quotient, 0.5, 1e-12);
  EXPECT_EQ(e.lead_witness, samples[0]);
  EXPECT_THROW(frechet_modulus(f, c0({1.0, 1.0}), l1({0.5, 0.5}), 0.0, samples), SetupError);
  EXPECT_THROW(frechet_modulus(f, c0({1.0, 1.0}), l1({0.5, 0.5}), 0.1, {}), SetupError);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify_point(supnorm_fn(), c0({1.0, 0.5, 0.25}), l1({1.0, 0.0, 0.0})).classification,
            PointClass::frechet);
  EXPECT_EQ(classify_point(supnorm_fn(), c0({1.0, 1.0}), l1({1.0, 0.0})).classification, PointClass::not_gateaux);
  const std::size_t n = 40;
  ProbeConfig pc;
  pc.window = pgnf_scale_window(n);
  const auto r = classify_point(basis_pgnf(n), TruncatedVector::zeros(n, SpaceTag::c0()),
                                TruncatedVector::zeros(n, SpaceTag::l1_dual()), pc);
  EXPECT_EQ(r.classification, PointClass::gateaux_only);
  EXPECT_GE(r.frechet_modulus_floor, 0.5 - 1e-12);
  EXPECT_TRUE(r.subgradient_consistent);
}

TEST(Classify, WrongDerivativeIsNotGateaux) {
  const auto r = classify_point(supnorm_fn(), c0({1.0, 0.5}), l1({0.0, 1.0}));
  EXPECT_EQ(r.classification, PointClass::not_gateaux);
  EXPECT_FALSE(r.subgradient_consistent);
}

TEST(Classify, SmoothQuadraticIsFrechet) {
  const auto f = half_squared_two_norm_fn(4);
  const auto x = TruncatedVector({0.5, -1.0, 0.25, 0.0}, SpaceTag::l2());
  const auto q = TruncatedVector({0.5, -1.0, 0.25, 0.0}, SpaceTag::l2_dual());
  EXPECT_EQ(classify_point(f, x, q).classification, PointClass::frechet);
}

TEST(Crosscheck, DictionaryHoldsOnCases) {
  for (const auto& c : cases::crosscheck_cases()) {
    const auto r = duality_crosscheck(c.f, c.x, c.q, c.k, SeparatingFamily::coordinate(c.x.size()), c.config);
    EXPECT_EQ(r.point_class, c.expected_point) << c.name;
    EXPECT_TRUE(r.consistent) << c.name;
  }
}

TEST(Crosscheck, DictionaryTable) {
  EXPECT_TRUE(dictionary_agrees(PointClass::frechet, MinimumClass::norm_strong));
  EXPECT_TRUE(dictionary_agrees(PointClass::gateaux_only, MinimumClass::weakstar_strong));
  EXPECT_TRUE(dictionary_agrees(PointClass::not_gateaux, MinimumClass::neither));
  EXPECT_FALSE(dictionary_agrees(PointClass::frechet, MinimumClass::weakstar_strong));
  EXPECT_FALSE(dictionary_agrees(PointClass::inconclusive, MinimumClass::inconclusive));
}

TEST(Crosscheck, NeedsKnownConjugate) {
  const auto k = build_K(jn_basis_sequence(4), 4);
  EXPECT_THROW(duality_crosscheck(supnorm_fn(), TruncatedVector::zeros(4, SpaceTag::c0()),
                                  TruncatedVector::zeros(4, SpaceTag::l1_dual()), k, SeparatingFamily::coordinate(4)),
               SetupError);
}

TEST(Crosscheck, CandidateOutsideK) {
  const std::size_t n = 8;
  const auto f = basis_pgnf(n);
  EXPECT_THROW(duality_crosscheck(f, TruncatedVector::zeros(n, SpaceTag::c0()),
                                  TruncatedVector::basis(n, 0, SpaceTag::l1_dual(), 3.0),
                                  build_K(jn_basis_sequence(n), n), SeparatingFamily::coordinate(n)),
               NotInDomain);
}

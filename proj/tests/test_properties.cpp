#include <gtest/gtest.h>

#include "generators.hpp"

using namespace limop;

namespace {


std::vector<std::pair<TruncatedVector, TruncatedVector>> random_pairs(testgen::Gen& g, std::size_t n, int count,
                                                                      double scale) {
  std::vector<std::pair<TruncatedVector, TruncatedVector>> out;
  for (int i = 0; i < count; ++i)
    out.emplace_back(g.vec(n, SpaceTag::c0(), scale), g.vec(n, SpaceTag::c0(), scale));
  return out;
}

}  // namespace

TEST(Property, AdjointIdentity) {
  testgen::Gen g(101);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + g.index(12);
    const auto t = g.op(n);
    const auto y = g.vec(n, SpaceTag::c0());
    const auto p = g.vec(n, SpaceTag::l1_dual());
    EXPECT_NEAR(pairing(p, t.apply(y)), pairing(t.adjoint_apply(p), y), 1e-12);
  }
}

TEST(Property, ApplyIsLinear) {
  testgen::Gen g(102);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + g.index(12);
    const auto t = g.op(n);
    const auto u = g.vec(n, SpaceTag::c0());
    const auto v = g.vec(n, SpaceTag::c0());
    const double a = g.uniform(-3, 3);
    const auto lhs = t.apply(axpy(u, a, v));
    const auto rhs = axpy(t.apply(u), a, t.apply(v));
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(lhs[k], rhs[k], 1e-12);
  }
}

TEST(Property, OneNormIsDualToSupNorm) {
  testgen::Gen g(103);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + g.index(10);
    const auto p = g.vec(n, SpaceTag::l1_dual());
    double best = 0.0;
    for (const auto& v : unit_ball_vertices(SpaceTag::c0(), n)) best = std::max(best, pairing(p, v));
    EXPECT_NEAR(best, dual_norm(p), 1e-12);
  }
}

TEST(Property, OperatorNormBound) {
  testgen::Gen g(104);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + g.index(10);
    const auto t = g.op(n);
    double best = 0.0;
    for (const auto& v : unit_ball_vertices(SpaceTag::c0(), n)) best = std::max(best, norm(t.apply(v)));
    EXPECT_LE(best, t.norm_bound() + 1e-12);
  }
}

TEST(Property, SeminormIsASeminorm) {
  testgen::Gen g(105);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + g.index(40);
    const auto fam = SeparatingFamily::coordinate(n);
    const auto p = g.vec(n, SpaceTag::l1_dual());
    const auto q = g.vec(n, SpaceTag::l1_dual());
    const double c = g.uniform(-4, 4);
    EXPECT_NEAR(seminorm_h(fam, c * p), std::abs(c) * seminorm_h(fam, p), 1e-12);
    EXPECT_LE(seminorm_h(fam, p + q), seminorm_h(fam, p) + seminorm_h(fam, q) + 1e-12);
    // |h(p) - h(q)| <= h(p - q) <= ||p - q||
    EXPECT_LE(std::abs(seminorm_h(fam, p) - seminorm_h(fam, q)), seminorm_h(fam, p - q) + 1e-12);
    EXPECT_LE(seminorm_h(fam, p - q), dual_norm(p - q) + 1e-12);
  }
}

TEST(Property, MetricAxioms) {
  testgen::Gen g(106);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + g.index(40);
    const auto fam = SeparatingFamily::coordinate(n);
    const auto p = g.vec(n, SpaceTag::l1_dual(), 5.0);
    const auto q = g.vec(n, SpaceTag::l1_dual(), 5.0);
    const auto r = g.vec(n, SpaceTag::l1_dual(), 5.0);
    EXPECT_EQ(weakstar_metric(fam, p, p), 0.0);
    EXPECT_DOUBLE_EQ(weakstar_metric(fam, p, q), weakstar_metric(fam, q, p));
    EXPECT_LE(weakstar_metric(fam, p, r), weakstar_metric(fam, p, q) + weakstar_metric(fam, q, r) + 1e-12);
    EXPECT_LT(weakstar_metric(fam, p, q), 2.0);
    if (p != q) EXPECT_GT(weakstar_metric(fam, p, q), 0.0);
    // nu / (1 + nu) <= nu gives d(p, q) <= sum 2^-k |p_k - q_k| <= ||p - q||
    EXPECT_LE(weakstar_metric(fam, p, q), dual_norm(p - q) + 1e-12);
  }
}

TEST(Property, FenchelYoungOnGrid) {
  testgen::Gen g(107);
  const std::vector<ConvexFn> fns{supnorm_fn(), half_squared_two_norm_fn(2), diag_quadratic_fn({0.5, 2.0})};
  for (const auto& f0 : fns) {
    // grid spacing 1/64 with R = 1 and 129 points, so dyadic points are grid points
    auto f = f0;
    for (int i = 0; i < 10; ++i) {
      auto x = g.dyadic(2, SpaceTag::c0());
      if (f0.name != "supnorm") x = TruncatedVector(x.values(), SpaceTag::l2());
      const auto p = TruncatedVector(g.vec(2, SpaceTag::l1_dual(), 2.0).values(), dual_of(x.tag()));
      EXPECT_GE(f(x) + fenchel_conjugate_grid(f, p, 1.0, 129), pairing(p, x) - 1e-12) << f.name;
    }
  }
}

TEST(Property, ConjugateReversesOrder) {
  testgen::Gen g(108);
  const auto f = supnorm_fn();
  auto bigger = supnorm_fn();
  bigger.evaluator = [](const TruncatedVector& x) { return norm(x) + 0.5 * pairing(TruncatedVector(x.values(), SpaceTag::l1_dual()), x); };
  for (int i = 0; i < 10; ++i) {
    const auto p = g.vec(2, SpaceTag::l1_dual(), 2.0);
    EXPECT_LE(fenchel_conjugate_grid(bigger, p, 2.0, 65), fenchel_conjugate_grid(f, p, 2.0, 65) + 1e-12);
  }
}

TEST(Property, ExactConjugateDominatesFeasiblePoints) {
  testgen::Gen g(109);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 1 + g.index(20);
    const auto k = build_K(jn_basis_sequence(n), n);
    const auto h = seminorm_fn(SeparatingFamily::coordinate(n));
    const auto x = g.vec(n, SpaceTag::c0(), 3.0);
    const auto r = conjugate_over_polytope(h, k, x);
    EXPECT_TRUE(k.contains(r.argmax, 1e-9));
    EXPECT_NEAR(r.value, pairing(r.argmax, x) - h(r.argmax), 1e-9);
    for (int j = 0; j < 20; ++j) {
      const auto p = g.simplex_point(n);
      EXPECT_GE(r.value, pairing(p, x) - h(p) - 1e-12);
    }
  }
}

TEST(Property, QuotientNondecreasingInT) {
  testgen::Gen g(110);
  const std::size_t n = 6;
  const auto pg = pgnf_construct(jn_basis_sequence(n), n, SeparatingFamily::coordinate(n));
  for (const auto& f : {supnorm_fn(), pg}) {
    for (int i = 0; i < 20; ++i) {
      const auto x = g.dyadic(n, SpaceTag::c0());
      const auto q = g.vec(n, SpaceTag::l1_dual());
      auto d = g.vec(n, SpaceTag::c0());
      d = (1.0 / norm(d)) * d;
      double prev = -std::numeric_limits<double>::infinity();
      for (double t : {1e-4, 1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0}) {
        const double v = difference_quotient(f, x, q, d, t);
        EXPECT_GE(v, prev - 1e-9) << f.name << " t=" << t;
        prev = v;
      }
    }
  }
}

TEST(Property, SubgradientGivesNonnegativeQuotients) {
  testgen::Gen g(111);
  const std::size_t n = 8;
  for (int i = 0; i < 30; ++i) {
    const auto x = g.dyadic(n, SpaceTag::c0());
    std::size_t j = 0;
    for (std::size_t k = 1; k < n; ++k)
      if (std::abs(x[k]) > std::abs(x[j])) j = k;
    const auto q = TruncatedVector::basis(n, j, SpaceTag::l1_dual(), x[j] >= 0 ? 1.0 : -1.0);
    const auto rep = classify_point(supnorm_fn(), x, q);
    EXPECT_TRUE(rep.subgradient_consistent);
    for (const auto& e : rep.frechet_table) EXPECT_GE(e.min_quotient, -1e-12);
  }
}

TEST(Property, ClassificationInvariantUnderTranslationAndScaling) {
  testgen::Gen g(112);
  const std::size_t n = 5;
  for (int i = 0; i < 20; ++i) {
    const auto x = g.dyadic(n, SpaceTag::c0());
    const auto a = g.dyadic(n, SpaceTag::c0());
    std::size_t j = 0;
    for (std::size_t k = 1; k < n; ++k)
      if (std::abs(x[k]) > std::abs(x[j])) j = k;
    const auto q = TruncatedVector::basis(n, j, SpaceTag::l1_dual(), x[j] >= 0 ? 1.0 : -1.0);
    const auto base = classify_point(supnorm_fn(), x, q).classification;

    ConvexFn shifted;
    shifted.evaluator = [a](const TruncatedVector& y) { return norm(y + a); };
    EXPECT_EQ(classify_point(shifted, x - a, q).classification, base);

    const double c = 0.25 + g.uniform(0.0, 4.0);
    ConvexFn scaled;
    scaled.evaluator = [c](const TruncatedVector& y) { return c * norm(y); };
    EXPECT_EQ(classify_point(scaled, x, c * q).classification, base);
  }
}

TEST(Property, PgnfConvexAndLipschitz) {
  testgen::Gen g(113);
  for (std::size_t n : {4u, 12u, 30u}) {
    const auto f = pgnf_construct(jn_basis_sequence(n), n, SeparatingFamily::coordinate(n));
    const auto pairs = random_pairs(g, n, 60, 2.0);
    EXPECT_LE(midpoint_convexity_violation(f, pairs), 1e-12);
    EXPECT_LE(lipschitz_violation(f, pairs), 1e-12);
    for (int i = 0; i < 20; ++i) {
      const auto x = g.vec(n, SpaceTag::c0(), 2.0);
      const double c = g.uniform(0.0, 1.0);
      // f(0) = 0 and convexity give f(cx) <= c f(x)
      EXPECT_LE(f(c * x), c * f(x) + 1e-12);
    }
  }
}

TEST(Property, CompositionMatchesPointwise) {
  testgen::Gen g(114);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + g.index(8);
    const auto t = g.op(n);
    const auto y = g.vec(n, SpaceTag::c0());
    EXPECT_DOUBLE_EQ(compose(supnorm_fn(), t)(y), supnorm_fn()(t.apply(y)));
  }
}

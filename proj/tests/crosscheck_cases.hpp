#pragma once

// Conjugate-constructed instances shared by the unit tests and the
// acceptance binary.

#include <string>
#include <vector>

#include "limop/limop.hpp"

namespace limop::cases {

/// f(x) = max over K of <p,x> - h(p - c), K = c + hull{e_0..e_{N-1}, 0}.
/// With c = 0 this is the basis-built PGNF; with c = e_0 it is <e_0,.> + PGNF.
inline ConvexFn shifted_pgnf(std::size_t n, const TruncatedVector& c) {
  std::vector<TruncatedVector> verts;
  for (std::size_t k = 0; k < n; ++k) verts.push_back(c + TruncatedVector::basis(n, k, c.tag()));
  verts.push_back(c);
  const PolytopeDomain k(verts, false);
  const auto fam = SeparatingFamily::coordinate(n);
  auto g = std::make_shared<ConvexFn>();
  g->name = "shifted_h";
  g->evaluator = [fam, c](const TruncatedVector& p) { return seminorm_h(fam, p - c); };
  g->weighted_l2 = WeightedL2Form{fam.weights(), c.values()};
  g->domain_hint = k;
  ConvexFn f;
  f.name = "shifted_pgnf";
  f.known_conjugate = g;
  f.domain_hint.reset();
  f.conjugate_minimizer = c;
  f.evaluator = [g, k](const TruncatedVector& x) { return conjugate_over_polytope(*g, k, x).value; };
  return f;
}

/// f = 0 as the conjugate of 0 over K = {0}.
inline ConvexFn zero_as_conjugate(std::size_t n) {
  auto g = std::make_shared<ConvexFn>(zero_fn());
  g->domain_hint = PolytopeDomain::origin_only(n);
  ConvexFn f = zero_fn();
  f.known_conjugate = g;
  f.conjugate_minimizer = TruncatedVector::zeros(n, SpaceTag::l1_dual());
  return f;
}

struct CrossCase {
  std::string name;
  ConvexFn f;
  TruncatedVector x;
  TruncatedVector q;
  PolytopeDomain k;
  ProbeConfig config;
  PointClass expected_point;
};

/// Ten instances covering the three dictionary entries.
inline std::vector<CrossCase> crosscheck_cases() {
  std::vector<CrossCase> out;
  auto dual0 = [](std::size_t n) { return TruncatedVector::zeros(n, SpaceTag::l1_dual()); };
  auto basis_k = [](std::size_t n) { return build_K(jn_basis_sequence(n), n); };
  auto window = [](std::size_t n) {
    ProbeConfig pc;
    pc.window = pgnf_scale_window(n);
    return pc;
  };
  for (std::size_t n : {32u, 40u, 48u})
    out.push_back({"pgnf at 0, N=" + std::to_string(n), shifted_pgnf(n, dual0(n)),
                   TruncatedVector::zeros(n, SpaceTag::c0()), dual0(n), basis_k(n), window(n),
                   PointClass::gateaux_only});
  for (std::size_t n : {32u, 40u}) {
    const auto e0 = TruncatedVector::basis(n, 0, SpaceTag::l1_dual());
    auto f = shifted_pgnf(n, e0);
    const auto k = f.known_conjugate->domain_hint.value();
    out.push_back({"e_0 + pgnf at 0, N=" + std::to_string(n), f, TruncatedVector::zeros(n, SpaceTag::c0()), e0, k,
                   window(n), PointClass::gateaux_only});
  }
  out.push_back({"zero over K={0}", zero_as_conjugate(8), TruncatedVector::zeros(8, SpaceTag::c0()), dual0(8),
                 PolytopeDomain::origin_only(8), {}, PointClass::frechet});
  // away from the kinks the PGNF is locally x_0 - 1
  out.push_back({"pgnf at 2e_0, N=16", shifted_pgnf(16, dual0(16)), TruncatedVector::basis(16, 0, SpaceTag::c0(), 2.0),
                 TruncatedVector::basis(16, 0, SpaceTag::l1_dual()), basis_k(16), {}, PointClass::frechet});
  {
    std::vector<double> x(16, 0.0);
    x[0] = 2.0;
    x[1] = 0.5;
    out.push_back({"pgnf at (2,0.5,0..), N=16", shifted_pgnf(16, dual0(16)), TruncatedVector(x, SpaceTag::c0()),
                   TruncatedVector::basis(16, 0, SpaceTag::l1_dual()), basis_k(16), {}, PointClass::frechet});
  }
  // on the kink t = 2^(-n/2) along e_n: not Gateaux, with subgradient 0
  out.push_back({"pgnf at e_0, N=16", shifted_pgnf(16, dual0(16)), TruncatedVector::basis(16, 0, SpaceTag::c0()),
                 dual0(16), basis_k(16), {}, PointClass::not_gateaux});
  out.push_back({"pgnf at e_2/2, N=24", shifted_pgnf(24, dual0(24)),
                 TruncatedVector::basis(24, 2, SpaceTag::c0(), 0.5), dual0(24), basis_k(24), {},
                 PointClass::not_gateaux});
  return out;
}

}  // namespace limop::cases

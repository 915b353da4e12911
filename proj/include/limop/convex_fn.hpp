#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "limop/polytope.hpp"
#include "limop/spaces.hpp"

namespace limop {

/// g(p) = sqrt(sum_k w_k (p_k - c_k)^2). Lets the conjugate solver recognise
/// the separating seminorm and use its exact maximiser.
struct WeightedL2Form {
  std::vector<double> weights;
  std::vector<double> center;
};

/// A convex function on one truncated space, with optional metadata.
/// The evaluator may return +infinity outside the effective domain.
struct ConvexFn {
  using Evaluator = std::function<double(const TruncatedVector&)>;
  using Gradient = std::function<TruncatedVector(const TruncatedVector&)>;

  std::string name;
  Evaluator evaluator;
  std::optional<double> lipschitz_bound;
  std::shared_ptr<const ConvexFn> known_conjugate;
  std::optional<PolytopeDomain> domain_hint;
  // minimiser of the known conjugate (the candidate derivative at 0)
  std::optional<TruncatedVector> conjugate_minimizer;
  std::optional<WeightedL2Form> weighted_l2;
  Gradient gradient;  // optional; returns a dual vector

  double operator()(const TruncatedVector& x) const { return evaluator(x); }

  /// Value with the domain indicator of domain_hint applied.
  double value_with_domain(const TruncatedVector& x, double tol = 1e-9) const {
    if (domain_hint && !domain_hint->contains(x, tol)) return std::numeric_limits<double>::infinity();
    return evaluator(x);
  }
};

inline ConvexFn zero_fn() {
  ConvexFn f;
  f.name = "zero";
  f.evaluator = [](const TruncatedVector&) { return 0.0; };
  f.lipschitz_bound = 0.0;
  return f;
}

/// The norm carried by the argument's tag (sup-norm on c0).
inline ConvexFn norm_fn() {
  ConvexFn f;
  f.name = "norm";
  f.evaluator = [](const TruncatedVector& x) { return norm(x); };
  f.lipschitz_bound = 1.0;
  return f;
}

inline ConvexFn supnorm_fn() {
  ConvexFn f;
  f.name = "supnorm";
  f.evaluator = [](const TruncatedVector& x) { return norm_of(x.coords(), NormKind::sup); };
  f.lipschitz_bound = 1.0;
  return f;
}

/// x -> <q, x>.
inline ConvexFn linear_fn(TruncatedVector q) {
  ConvexFn f;
  f.name = "linear";
  f.lipschitz_bound = dual_norm(q);
  f.gradient = [q](const TruncatedVector&) { return q; };
  f.evaluator = [q = std::move(q)](const TruncatedVector& x) { return pairing(q, x); };
  return f;
}

/// x -> (1/2) sum_k a_k x_k^2 with a_k >= 0.
inline ConvexFn diag_quadratic_fn(std::vector<double> coeffs) {
  ConvexFn f;
  f.name = "quadratic";
  f.gradient = [coeffs](const TruncatedVector& x) {
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = coeffs.at(i) * x[i];
    return TruncatedVector(std::move(g), x.tag().side == Side::primal ? dual_of(x.tag()) : x.tag());
  };
  f.evaluator = [coeffs = std::move(coeffs)](const TruncatedVector& x) {
    if (coeffs.size() != x.size()) throw DimensionError("quadratic coefficient count mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += coeffs[i] * x[i] * x[i];
    return 0.5 * s;
  };
  return f;
}

inline ConvexFn half_squared_two_norm_fn(std::size_t n) {
  auto f = diag_quadratic_fn(std::vector<double>(n, 1.0));
  f.name = "half_squared_two_norm";
  return f;
}

/// y -> f(T y).
inline ConvexFn compose(const ConvexFn& f, const LinearOp& t) {
  ConvexFn out;
  out.name = f.name + "∘T";
  if (f.lipschitz_bound) out.lipschitz_bound = *f.lipschitz_bound * t.norm_bound();
  out.evaluator = [f, t](const TruncatedVector& y) { return f(t.apply(y)); };
  if (f.gradient)
    out.gradient = [f, t](const TruncatedVector& y) { return t.adjoint_apply(f.gradient(t.apply(y))); };
  return out;
}

/// Largest midpoint-convexity violation f((u+v)/2) - (f(u)+f(v))/2 over pairs.
inline double midpoint_convexity_violation(
    const ConvexFn& f, const std::vector<std::pair<TruncatedVector, TruncatedVector>>& pairs) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& [u, v] : pairs) {
    const double mid = f(0.5 * (u + v));
    worst = std::max(worst, mid - 0.5 * (f(u) + f(v)));
  }
  return worst;
}

/// Largest |f(u)-f(v)| - L ||u-v|| over pairs (needs lipschitz_bound).
inline double lipschitz_violation(
    const ConvexFn& f, const std::vector<std::pair<TruncatedVector, TruncatedVector>>& pairs) {
  if (!f.lipschitz_bound) throw SetupError("function has no Lipschitz bound");
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& [u, v] : pairs)
    worst = std::max(worst, std::abs(f(u) - f(v)) - *f.lipschitz_bound * norm(u - v));
  return worst;
}

}  // namespace limop

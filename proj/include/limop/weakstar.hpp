#pragma once

// Weak*-machinery at truncation: separating families, the seminorm
// h(p) = (sum_k 2^-k <p, x_k>^2)^(1/2), the metric
// d(p, q) = sum_k 2^-k nu_k / (1 + nu_k) with nu_k = |<p - q, x_k>|,
// JN-sequence generators, and classification of minimising sequences.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "limop/convex_fn.hpp"
#include "limop/errors.hpp"
#include "limop/polytope.hpp"
#include "limop/spaces.hpp"

namespace limop {

class SeparatingFamily {
 public:
  explicit SeparatingFamily(std::vector<TruncatedVector> vectors) : vectors_(std::move(vectors)) {
    if (vectors_.empty()) throw DimensionError("separating family is empty");
    for (const auto& v : vectors_) {
      require_same_space(v, vectors_.front());
      if (v.tag().side != Side::primal) throw UnsupportedTag("separating vectors must be primal");
      if (std::abs(norm(v) - 1.0) > 1e-12) throw SetupError("separating vectors must have norm 1");
    }
    weights_.resize(vectors_.size());
    for (std::size_t k = 0; k < vectors_.size(); ++k) weights_[k] = std::ldexp(1.0, -static_cast<int>(k));
  }

  /// x_k = e_k, k < n.
  static SeparatingFamily coordinate(std::size_t n, SpaceTag primal = SpaceTag::c0()) {
    std::vector<TruncatedVector> v;
    v.reserve(n);
    for (std::size_t k = 0; k < n; ++k) v.push_back(TruncatedVector::basis(n, k, primal));
    return SeparatingFamily(std::move(v));
  }

  const std::vector<TruncatedVector>& vectors() const { return vectors_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t dim() const { return vectors_.front().size(); }
  const SpaceTag& primal_tag() const { return vectors_.front().tag(); }

  bool is_coordinate() const {
    if (vectors_.size() != dim()) return false;
    for (std::size_t k = 0; k < vectors_.size(); ++k)
      for (std::size_t d = 0; d < dim(); ++d)
        if (vectors_[k][d] != (k == d ? 1.0 : 0.0)) return false;
    return true;
  }

  /// Whether the family tells every pair of distinct generators of K apart.
  bool separates(const PolytopeDomain& k, double tol = 0.0) const {
    const auto gens = k.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j) {
        if (gens[i] == gens[j]) continue;
        const auto diff = gens[i] - gens[j];
        bool split = false;
        for (const auto& x : vectors_)
          if (std::abs(pairing(diff, x)) > tol) {
            split = true;
            break;
          }
        if (!split) return false;
      }
    return true;
  }

 private:
  std::vector<TruncatedVector> vectors_;
  std::vector<double> weights_;
};

inline double seminorm_h(const SeparatingFamily& family, const TruncatedVector& p) {
  if (p.size() != family.dim()) throw DimensionError("seminorm_h: dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < family.vectors().size(); ++k) {
    const double v = pairing(p, family.vectors()[k]);
    s += family.weights()[k] * v * v;
  }
  return std::sqrt(s);
}

inline double weakstar_metric(const SeparatingFamily& family, const TruncatedVector& p,
                              const TruncatedVector& q) {
  require_same_space(p, q);
  if (p.size() != family.dim()) throw DimensionError("weakstar_metric: dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < family.vectors().size(); ++k) {
    double nu = 0.0;
    for (std::size_t d = 0; d < p.size(); ++d) nu += (p[d] - q[d]) * family.vectors()[k][d];
    nu = std::abs(nu);
    s += family.weights()[k] * (nu / (1.0 + nu));
  }
  return s;
}

/// h as a ConvexFn on the dual space. For the coordinate family it carries
/// the weighted-l2 form so conjugates over basis simplices are exact.
inline ConvexFn seminorm_fn(const SeparatingFamily& family) {
  ConvexFn f;
  f.name = "seminorm_h";
  f.evaluator = [family](const TruncatedVector& p) { return seminorm_h(family, p); };
  double l = 0.0;
  for (double w : family.weights()) l += w;
  f.lipschitz_bound = std::sqrt(l);
  if (family.is_coordinate())
    f.weighted_l2 = WeightedL2Form{family.weights(), std::vector<double>(family.dim(), 0.0)};
  return f;
}

struct JNSequenceSpec {
  std::string name;
  std::function<TruncatedVector(std::size_t)> generator;
  double norm_floor = 0.0;
  std::size_t dim = 0;  // truncation N
  SpaceTag dual_tag{};
  std::size_t length = 0;  // number of defined indices at this truncation
};

/// n -> e_n in the dual space R^N, with norm floor 1.
inline JNSequenceSpec jn_basis_sequence(std::size_t n, SpaceTag dual_tag = SpaceTag::l1_dual()) {
  if (n == 0) throw DimensionError("jn_basis_sequence needs N >= 1");
  if (dual_tag.side != Side::dual || dual_tag.norm == NormKind::sup)
    throw UnsupportedTag("JN basis sequences need a one- or two-norm dual tag");
  JNSequenceSpec spec;
  spec.name = "basis";
  spec.dim = n;
  spec.length = n;
  spec.dual_tag = dual_tag;
  spec.norm_floor = 1.0;
  spec.generator = [n, dual_tag](std::size_t i) { return TruncatedVector::basis(n, i, dual_tag); };
  return spec;
}

struct JNCheck {
  bool norm_floor_ok = true;
  bool weakstar_null_ok = true;
  double min_norm = std::numeric_limits<double>::infinity();
  double max_tail_pairing = 0.0;
};

/// Checks both JN invariants up to `horizon`: norms stay above the floor and,
/// for every fixed primal basis vector e_k, the tail pairings <p_n, e_k> are 0
/// beyond index k.
inline JNCheck check_jn(const JNSequenceSpec& spec, std::size_t horizon, double tol = 1e-12) {
  JNCheck out;
  const std::size_t h = std::min(horizon, spec.length);
  const SpaceTag primal = dual_of(spec.dual_tag);
  for (std::size_t i = 0; i < h; ++i) {
    const auto p = spec.generator(i);
    const double nrm = dual_norm(p);
    out.min_norm = std::min(out.min_norm, nrm);
    if (nrm < spec.norm_floor - tol) out.norm_floor_ok = false;
  }
  // tail = last quarter of the horizon; coordinates checked are the ones
  // fixed before the tail starts
  const std::size_t tail_start = h - (h + 3) / 4;
  for (std::size_t k = 0; k < tail_start; ++k) {
    const auto ek = TruncatedVector::basis(spec.dim, k, primal);
    for (std::size_t i = tail_start; i < h; ++i)
      out.max_tail_pairing = std::max(out.max_tail_pairing, std::abs(pairing(spec.generator(i), ek)));
  }
  if (out.max_tail_pairing > tol) out.weakstar_null_ok = false;
  return out;
}

/// K = hull{generator(0), ..., generator(N-1), 0}.
inline PolytopeDomain build_K(const JNSequenceSpec& spec, std::size_t n) {
  if (n == 0) throw DimensionError("build_K needs N >= 1");
  std::vector<TruncatedVector> vertices;
  const std::size_t count = std::min(n, spec.length);
  for (std::size_t i = 0; i < count; ++i) vertices.push_back(spec.generator(i));
  return PolytopeDomain(std::move(vertices), true);
}

// ---------------------------------------------------------------------------
// Minimising-sequence classification

enum class MinimumClass { norm_strong, weakstar_strong, neither, inconclusive };

inline std::string to_string(MinimumClass c) {
  switch (c) {
    case MinimumClass::norm_strong: return "norm-strong";
    case MinimumClass::weakstar_strong: return "weak*-strong";
    case MinimumClass::neither: return "neither";
    case MinimumClass::inconclusive: return "inconclusive";
  }
  return "unknown";
}

inline bool is_weakstar_strong(MinimumClass c) {
  return c == MinimumClass::norm_strong || c == MinimumClass::weakstar_strong;
}

/// Finite-horizon reading of "-> 0". The tail is the last quarter of the
/// horizon, the head the first quarter. A quantity tends to 0 when its tail
/// stays below the absolute tolerance, or when the tail is nonincreasing and
/// has decayed below decay_ratio times the head. It is bounded away from 0
/// when it does not tend to 0 and its tail stays above 10x the tolerance.
struct TailRule {
  double value_tol = 1e-6;
  double d_tol = 1e-6;
  double norm_tol = 1e-3;
  double decay_ratio = 1e-2;
  double membership_tol = 1e-9;
};

namespace detail {

struct TailStats {
  double head_max = 0.0;
  double tail_max = 0.0;
  double tail_min = std::numeric_limits<double>::infinity();
  bool tail_nonincreasing = true;
};

inline TailStats tail_stats(const std::vector<double>& v) {
  TailStats s;
  const std::size_t n = v.size();
  if (n == 0) return s;
  const std::size_t q = (n + 3) / 4;
  for (std::size_t i = 0; i < q; ++i) s.head_max = std::max(s.head_max, v[i]);
  for (std::size_t i = n - q; i < n; ++i) {
    s.tail_max = std::max(s.tail_max, v[i]);
    s.tail_min = std::min(s.tail_min, v[i]);
    if (i > n - q && v[i] > v[i - 1] * (1.0 + 1e-12) + 1e-300) s.tail_nonincreasing = false;
  }
  return s;
}

inline bool tends_to_zero(const std::vector<double>& v, double abs_tol, double ratio) {
  if (v.empty()) return false;
  const auto s = tail_stats(v);
  if (s.tail_max <= abs_tol) return true;
  return s.tail_nonincreasing && s.tail_max <= ratio * s.head_max;
}

inline bool bounded_away(const std::vector<double>& v, double abs_tol, double ratio) {
  if (v.empty() || tends_to_zero(v, abs_tol, ratio)) return false;
  return tail_stats(v).tail_min > 10.0 * abs_tol;
}

}  // namespace detail

struct SequenceTrace {
  std::vector<double> values;       // fn(p_n)
  std::vector<double> value_gaps;   // fn(p_n) - fn(minimizer)
  std::vector<double> d_distances;  // d(p_n, minimizer)
  std::vector<double> dual_norms;   // ||p_n - minimizer||
  bool minimizing = false;
  bool d_null = false;
  bool d_bounded_away = false;
  bool norm_null = false;
  bool norm_bounded_away = false;
};

struct MinSeqReport {
  double min_value = 0.0;
  std::vector<SequenceTrace> traces;
  MinimumClass classification = MinimumClass::inconclusive;
  TailRule rule;
};

using DualSequence = std::function<TruncatedVector(std::size_t)>;

inline SequenceTrace trace_sequence(const ConvexFn& fn, const PolytopeDomain& k,
                                    const SeparatingFamily& family, const TruncatedVector& minimizer,
                                    double min_value, const DualSequence& seq, std::size_t horizon,
                                    const TailRule& rule) {
  SequenceTrace t;
  for (std::size_t i = 0; i < horizon; ++i) {
    const auto p = seq(i);
    if (!k.contains(p, rule.membership_tol))
      throw NotInDomain("sequence point " + std::to_string(i) + " lies outside K");
    const double v = fn(p);
    t.values.push_back(v);
    t.value_gaps.push_back(std::abs(v - min_value));
    t.d_distances.push_back(weakstar_metric(family, p, minimizer));
    t.dual_norms.push_back(dual_norm(p - minimizer));
  }
  t.minimizing = detail::tends_to_zero(t.value_gaps, rule.value_tol, rule.decay_ratio);
  t.d_null = detail::tends_to_zero(t.d_distances, rule.d_tol, rule.decay_ratio);
  t.d_bounded_away = detail::bounded_away(t.d_distances, rule.d_tol, rule.decay_ratio);
  t.norm_null = detail::tends_to_zero(t.dual_norms, rule.norm_tol, rule.decay_ratio);
  t.norm_bounded_away = detail::bounded_away(t.dual_norms, rule.norm_tol, rule.decay_ratio);
  return t;
}

inline MinimumClass classify_traces(const std::vector<SequenceTrace>& traces) {
  bool any_minimizing = false, all_d_null = true, any_d_away = false, all_norm_null = true;
  for (const auto& t : traces) {
    if (!t.minimizing) continue;
    any_minimizing = true;
    all_d_null = all_d_null && t.d_null;
    any_d_away = any_d_away || t.d_bounded_away;
    all_norm_null = all_norm_null && t.norm_null;
  }
  if (!any_minimizing) return MinimumClass::inconclusive;
  if (any_d_away) return MinimumClass::neither;
  if (!all_d_null) return MinimumClass::inconclusive;
  return all_norm_null ? MinimumClass::norm_strong : MinimumClass::weakstar_strong;
}

/// Classifies the minimum of fn on K at `minimizer` from the supplied
/// sequences, each sampled at indices 0..horizon-1.
inline MinSeqReport classify_minimum(const ConvexFn& fn_on_k, const PolytopeDomain& k,
                                     const SeparatingFamily& family, const TruncatedVector& minimizer,
                                     const std::vector<DualSequence>& sequences, std::size_t horizon,
                                     const TailRule& rule = {}) {
  if (!k.contains(minimizer, rule.membership_tol)) throw NotInDomain("minimizer lies outside K");
  MinSeqReport rep;
  rep.rule = rule;
  rep.min_value = fn_on_k(minimizer);
  for (const auto& s : sequences)
    rep.traces.push_back(trace_sequence(fn_on_k, k, family, minimizer, rep.min_value, s, horizon, rule));
  rep.classification = classify_traces(rep.traces);
  return rep;
}

}  // namespace limop

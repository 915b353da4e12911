#pragma once

// Limited sets and operators, the basis-built PGNF function, and the two
// end-to-end experiment runners (the limited-operator characterisation and
// the five-way equivalence for the identity).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "limop/conjugate.hpp"
#include "limop/convex_fn.hpp"
#include "limop/differentiability.hpp"
#include "limop/errors.hpp"
#include "limop/spaces.hpp"
#include "limop/weakstar.hpp"

namespace limop {

enum class LimitedClass { null, bounded_below, inconclusive };

inline std::string to_string(LimitedClass c) {
  switch (c) {
    case LimitedClass::null: return "null";
    case LimitedClass::bounded_below: return "bounded-below";
    case LimitedClass::inconclusive: return "inconclusive";
  }
  return "unknown";
}

/// Tail reading for sup-sequences, relative to their peak. null: the tail
/// max is at most null_ratio * peak (or the peak is 0). bounded-below: the
/// tail min is at least floor_ratio * peak and the peak exceeds abs_tol.
struct LimitedRule {
  double null_ratio = 0.05;
  double floor_ratio = 0.5;
  double abs_tol = 1e-12;
};

struct SpecOutcome {
  std::string spec;
  std::vector<double> sup_values;
  LimitedClass classification = LimitedClass::inconclusive;
  double floor_estimate = 0.0;
};

struct LimitedReport {
  std::vector<double> sup_values;
  LimitedClass decay_classification = LimitedClass::inconclusive;
  double floor_estimate = 0.0;
  std::string witness_spec;  // spec behind the top-level fields
  std::string verdict;
  std::vector<SpecOutcome> per_spec;
  LimitedRule rule;
};

namespace detail {

inline SpecOutcome classify_sup_values(std::string spec, std::vector<double> sup, const LimitedRule& rule) {
  SpecOutcome out{std::move(spec), std::move(sup), LimitedClass::inconclusive, 0.0};
  const auto& v = out.sup_values;
  if (v.empty()) return out;
  const std::size_t q = (v.size() + 3) / 4;
  const double peak = *std::max_element(v.begin(), v.end());
  const double tail_max = *std::max_element(v.end() - static_cast<std::ptrdiff_t>(q), v.end());
  const double tail_min = *std::min_element(v.end() - static_cast<std::ptrdiff_t>(q), v.end());
  out.floor_estimate = tail_min;
  if (peak <= rule.abs_tol || tail_max <= rule.null_ratio * peak) out.classification = LimitedClass::null;
  else if (tail_min >= rule.floor_ratio * peak) out.classification = LimitedClass::bounded_below;
  return out;
}

inline LimitedReport assemble(std::vector<SpecOutcome> outcomes, const LimitedRule& rule) {
  LimitedReport rep;
  rep.rule = rule;
  rep.per_spec = std::move(outcomes);
  if (rep.per_spec.empty()) throw SetupError("limited test needs at least one spec");
  std::size_t pick = 0;
  bool any_below = false, all_null = true;
  for (std::size_t i = 0; i < rep.per_spec.size(); ++i) {
    const auto c = rep.per_spec[i].classification;
    all_null = all_null && c == LimitedClass::null;
    if (c == LimitedClass::bounded_below && !any_below) {
      any_below = true;
      pick = i;
    }
  }
  if (!any_below)
    for (std::size_t i = 0; i < rep.per_spec.size(); ++i)
      if (rep.per_spec[i].floor_estimate > rep.per_spec[pick].floor_estimate) pick = i;
  const auto& w = rep.per_spec[pick];
  rep.sup_values = w.sup_values;
  rep.floor_estimate = w.floor_estimate;
  rep.witness_spec = w.spec;
  rep.decay_classification =
      any_below ? LimitedClass::bounded_below : (all_null ? LimitedClass::null : LimitedClass::inconclusive);
  return rep;
}

}  // namespace detail

/// sup_values(n) = max over vertices of |<generator(n), v>|.
inline LimitedReport limited_set_test(const std::vector<TruncatedVector>& a_vertices, const JNSequenceSpec& spec,
                                      std::size_t horizon, const LimitedRule& rule = {}) {
  if (a_vertices.empty()) throw DimensionError("limited_set_test needs at least one vertex");
  for (const auto& v : a_vertices)
    if (v.size() != spec.dim) throw DimensionError("vertex dimension does not match the spec");
  const std::size_t h = std::min(horizon, spec.length);
  std::vector<double> sup(h, 0.0);
  for (std::size_t n = 0; n < h; ++n) {
    const auto p = spec.generator(n);
    for (const auto& v : a_vertices) sup[n] = std::max(sup[n], std::abs(pairing(p, v)));
  }
  auto rep = detail::assemble({detail::classify_sup_values(spec.name, std::move(sup), rule)}, rule);
  rep.verdict = rep.decay_classification == LimitedClass::null
                    ? "limited at truncation against the supplied spec"
                    : (rep.decay_classification == LimitedClass::bounded_below ? "not limited" : "inconclusive");
  return rep;
}

/// sup_values(n) = ||T* generator(n)|| for each spec; bounded-below on any
/// spec makes the operator "not limited", null on all makes it "limited at
/// truncation against the supplied specs".
inline LimitedReport limited_operator_test(const LinearOp& t, const std::vector<JNSequenceSpec>& specs,
                                           std::size_t horizon, const LimitedRule& rule = {}) {
  std::vector<SpecOutcome> outcomes;
  for (const auto& spec : specs) {
    if (spec.dim != t.out_dim()) throw DimensionError("spec dimension does not match the operator codomain");
    const std::size_t h = std::min(horizon, spec.length);
    std::vector<double> sup(h);
    for (std::size_t n = 0; n < h; ++n) sup[n] = dual_norm(t.adjoint_apply(spec.generator(n)));
    outcomes.push_back(detail::classify_sup_values(spec.name, std::move(sup), rule));
  }
  auto rep = detail::assemble(std::move(outcomes), rule);
  switch (rep.decay_classification) {
    case LimitedClass::null: rep.verdict = "limited at truncation against the supplied specs"; break;
    case LimitedClass::bounded_below: rep.verdict = "not limited"; break;
    case LimitedClass::inconclusive: rep.verdict = "inconclusive"; break;
  }
  return rep;
}

/// Vertices of the unit ball of a sup-norm space: every sign pattern when
/// N <= 12, otherwise 4096 seeded random sign patterns.
inline std::vector<TruncatedVector> unit_ball_vertices(SpaceTag tag, std::size_t n, std::uint64_t seed = 0x5eed) {
  if (n == 0) throw DimensionError("unit_ball_vertices needs N >= 1");
  if (tag.norm != NormKind::sup) throw UnsupportedTag("sign-pattern vertices describe sup-norm balls only");
  std::vector<TruncatedVector> out;
  auto from_bits = [&](auto bit) {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = bit(k) ? 1.0 : -1.0;
    out.emplace_back(std::move(v), tag);
  };
  if (n <= 12) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
      from_bits([mask](std::size_t k) { return (mask >> k) & 1u; });
  } else {
    std::mt19937_64 rng(seed);
    for (int c = 0; c < 4096; ++c) {
      std::vector<bool> bits(n);
      for (std::size_t k = 0; k < n; ++k) bits[k] = rng() & 1u;
      from_bits([&bits](std::size_t k) { return bits[k]; });
    }
  }
  return out;
}

/// f(x) = (h + indicator of K)^*(x) with K = build_K(spec, N). The known
/// conjugate is h restricted to K, minimised at 0.
inline ConvexFn pgnf_construct(const JNSequenceSpec& spec, std::size_t n, const SeparatingFamily& family,
                               const SolverBudget& budget = {}) {
  if (spec.dim != n || family.dim() != n) throw DimensionError("spec, family and N disagree");
  budget.validate();
  const auto k = build_K(spec, n);
  auto g = seminorm_fn(family);
  g.name = "h_plus_indicator_K";
  g.domain_hint = k;
  auto g_ptr = std::make_shared<const ConvexFn>(g);

  ConvexFn f;
  f.name = "pgnf";
  f.lipschitz_bound = k.max_dual_norm();
  f.known_conjugate = g_ptr;
  f.conjugate_minimizer = TruncatedVector::zeros(n, spec.dual_tag);
  f.evaluator = [g_ptr, k, budget](const TruncatedVector& x) {
    return conjugate_over_polytope(*g_ptr, k, x, budget).value;
  };
  return f;
}

// ---------------------------------------------------------------------------
// Operator families for the sweeps

struct OperatorFamily {
  std::string name;
  std::function<LinearOp(std::size_t)> make;
};

inline OperatorFamily identity_family() {
  return {"identity", [](std::size_t n) { return LinearOp::identity(n); }};
}

inline OperatorFamily zero_family() {
  return {"zero", [](std::size_t n) { return LinearOp::zero(n); }};
}

/// diag(1/(n+1)).
inline OperatorFamily harmonic_family() {
  return {"diag-harmonic", [](std::size_t n) {
            std::vector<double> d(n);
            for (std::size_t i = 0; i < n; ++i) d[i] = 1.0 / static_cast<double>(i + 1);
            return LinearOp::diagonal(std::move(d), SpaceTag::c0(), SpaceTag::c0());
          }};
}

/// diag(2^-n).
inline OperatorFamily dyadic_family() {
  return {"diag-dyadic", [](std::size_t n) {
            std::vector<double> d(n);
            for (std::size_t i = 0; i < n; ++i) d[i] = std::ldexp(1.0, -static_cast<int>(i));
            return LinearOp::diagonal(std::move(d), SpaceTag::c0(), SpaceTag::c0());
          }};
}

/// Seeded dense matrix with entries uniform in [-1, 1] / N.
inline OperatorFamily dense_family(std::uint64_t seed = 0x5eed) {
  return {"dense", [seed](std::size_t n) {
            std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * n));
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            std::vector<double> data(n * n);
            for (auto& a : data) a = u(rng) / static_cast<double>(n);
            return LinearOp::dense(n, n, std::move(data), SpaceTag::c0(), SpaceTag::c0());
          }};
}

// ---------------------------------------------------------------------------
// Experiment reports

enum class LegStatus { pass, fail, inconclusive };

inline std::string to_string(LegStatus s) {
  switch (s) {
    case LegStatus::pass: return "pass";
    case LegStatus::fail: return "fail";
    case LegStatus::inconclusive: return "inconclusive";
  }
  return "unknown";
}

struct LegResult {
  std::string leg;
  std::size_t n = 0;
  LegStatus status = LegStatus::inconclusive;
  std::string note;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::pair<std::string, std::string>> labels;
};

struct ExperimentConfig {
  double tol = 1e-6;
  std::uint64_t seed = 0x5eed;
  std::size_t instances = 20;
  SolverBudget budget;
  TailRule rule;
  LimitedRule limited_rule;
};

struct ExperimentReport {
  std::string experiment;
  std::string operator_name;
  std::vector<std::size_t> n_sweep;
  std::vector<LimitedReport> limited;  // one per N
  std::vector<LegResult> legs;

  bool all_pass() const {
    return std::none_of(legs.begin(), legs.end(), [](const LegResult& l) { return l.status == LegStatus::fail; });
  }
};

namespace detail {

/// PGNF window pulled back through T. With s_n = ||T* e_n||, Frechet scales
/// are 2^(1-n/2) / s_n and Gateaux scales 2^(-j/2) / max s_n; the sphere
/// samples gain the norming directions sign(T* e_n). For the identity this is
/// exactly pgnf_scale_window(N).
inline ProbeConfig pgnf_probe_config(const LinearOp& t, std::size_t n, const ExperimentConfig& cfg) {
  ProbeConfig pc;
  pc.tol = cfg.tol;
  pc.seed = cfg.seed;
  const auto base = pgnf_scale_window(n);
  const SpaceTag xdual = dual_of(t.codomain());
  std::vector<double> s(n);
  double s_max = 0.0;
  std::vector<TruncatedVector> norming;
  for (std::size_t k = 0; k < n; ++k) {
    const auto a = t.adjoint_apply(TruncatedVector::basis(n, k, xdual));
    s[k] = dual_norm(a);
    s_max = std::max(s_max, s[k]);
    std::vector<double> sg(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) sg[i] = a[i] > 0.0 ? 1.0 : (a[i] < 0.0 ? -1.0 : 0.0);
    if (s[k] > 0.0 && t.domain().norm == NormKind::sup) norming.emplace_back(std::move(sg), t.domain());
  }
  if (s_max == 0.0) {
    pc.window = base;
    return pc;
  }
  for (double g : base.gateaux_scales) pc.window.gateaux_scales.push_back(g / s_max);
  std::vector<double> fr;
  for (std::size_t k = 0; k < n; ++k)
    if (s[k] > 0.0) fr.push_back(base.frechet_scales[k] / s[k]);
  std::sort(fr.begin(), fr.end(), std::greater<>());
  for (double v : fr)
    if (pc.window.frechet_scales.empty() || v < pc.window.frechet_scales.back() * (1.0 - 1e-12))
      pc.window.frechet_scales.push_back(v);
  pc.sphere_samples = default_sphere_samples(n, t.domain(), pc.random_directions, pc.seed);
  pc.sphere_samples.insert(pc.sphere_samples.end(), norming.begin(), norming.end());
  return pc;
}

/// min over 2 <= k < N of the quotient along e_k at t = 2^(1-k/2); +inf when N <= 2.
inline double basis_witness_floor(const ConvexFn& f, std::size_t n) {
  const auto zero = TruncatedVector::zeros(n, SpaceTag::c0());
  const auto q = TruncatedVector::zeros(n, SpaceTag::l1_dual());
  double floor_q = std::numeric_limits<double>::infinity();
  for (std::size_t k = 2; k < n; ++k) {
    const double t = 2.0 * std::sqrt(std::ldexp(1.0, -static_cast<int>(k)));
    floor_q = std::min(floor_q, difference_quotient(f, zero, q, TruncatedVector::basis(n, k, SpaceTag::c0()), t));
  }
  return floor_q;
}

}  // namespace detail

/// "Only if" leg at one N: the PGNF f built from the basis JN sequence in the
/// codomain dual is Gateaux at T(0) = 0, and f o T is Gateaux but not Frechet
/// at 0 over the PGNF scale window. For the identity the basis witness floor
/// must also reach 1/2.
inline LegResult only_if_leg(const LinearOp& t, std::size_t n, const ExperimentConfig& cfg,
                             bool require_basis_floor) {
  LegResult leg;
  leg.leg = "only-if";
  leg.n = n;
  const auto spec = jn_basis_sequence(n, dual_of(t.codomain()));
  const auto f = pgnf_construct(spec, n, SeparatingFamily::coordinate(n, t.codomain()), cfg.budget);
  const auto ft = compose(f, t);
  const auto pc = detail::pgnf_probe_config(t, n, cfg);

  const auto y0 = TruncatedVector::zeros(n, t.domain());
  const auto x0 = t.apply(y0);
  const auto q_x = TruncatedVector::zeros(n, dual_of(t.codomain()));
  const auto q_y = t.adjoint_apply(q_x);
  const auto f_at_tx = gateaux_probe(f, x0, q_x, signed_basis(n, t.codomain()),
                                     pgnf_scale_window(n).gateaux_scales, cfg.tol);
  const auto rep = classify_point(ft, y0, q_y, pc);

  const double floor_q = require_basis_floor ? detail::basis_witness_floor(ft, n)
                                             : std::numeric_limits<double>::quiet_NaN();
  const bool floor_ok = !require_basis_floor || n <= 2 || floor_q >= 0.5 - cfg.tol;
  const bool ok = f_at_tx.pass && rep.classification == PointClass::gateaux_only && floor_ok;
  leg.status = ok ? LegStatus::pass : LegStatus::fail;
  leg.metrics = {{"f_gateaux_max_final_quotient", f_at_tx.max_final_quotient},
                 {"fT_gateaux_max_final_quotient", rep.gateaux.max_final_quotient},
                 {"fT_frechet_modulus_floor", rep.frechet_modulus_floor},
                 {"fT_smallest_scale_sup", rep.smallest_scale_sup},
                 {"f_at_zero", f(x0)}};
  if (require_basis_floor) leg.metrics.emplace_back("basis_witness_floor", floor_q);
  leg.labels = {{"g", "h + indicator of K, K = hull{e_0..e_{N-1}, 0}"},
                {"f", "g* restricted to X"},
                {"(f o T)*", "minimised at 0 along T* e_n, norms bounded below"},
                {"f_at_T0", f_at_tx.pass ? "gateaux" : "not-gateaux"},
                {"fT_at_0", to_string(rep.classification)}};
  leg.note = "f o T is Gateaux but not Frechet at 0 across the window";
  return leg;
}

/// "If" leg at one N: seeded convex instances composed with T; every Gateaux
/// pass must be Frechet with candidate derivative T* (derivative of f).
inline LegResult if_leg(const LinearOp& t, std::size_t n, const ExperimentConfig& cfg) {
  LegResult leg;
  leg.leg = "if";
  leg.n = n;
  std::mt19937_64 rng(cfg.seed ^ (0x2545f4914f6cdd1dull * (n + 1)));
  std::uniform_int_distribution<int> lattice(-128, 128);
  auto random_point = [&] {
    std::vector<double> v(n);
    for (auto& c : v) c = lattice(rng) / 128.0;
    return TruncatedVector(std::move(v), t.domain());
  };
  const SpaceTag xdual = dual_of(t.codomain());
  std::shared_ptr<ConvexFn> pgnf;

  std::size_t passes = 0, upgrades = 0, not_gateaux = 0, inconclusive = 0;
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    ConvexFn f;
    TruncatedVector y = TruncatedVector::zeros(n, t.domain());
    TruncatedVector qx = TruncatedVector::zeros(n, xdual);
    ProbeConfig pc;
    pc.tol = cfg.tol;
    pc.seed = cfg.seed + i;
    switch (i % 4) {
      case 0: {  // log-sum-exp plus a diagonal quadratic
        std::vector<double> a(n);
        std::uniform_real_distribution<double> u(0.0, 2.0);
        for (auto& c : a) c = u(rng);
        auto quad = diag_quadratic_fn(a);
        f.name = "logsumexp_plus_quadratic";
        f.evaluator = [quad](const TruncatedVector& x) {
          const double m = *std::max_element(x.values().begin(), x.values().end());
          double s = 0.0;
          for (double c : x.values()) s += std::exp(c - m);
          return m + std::log(s) + quad(x);
        };
        f.gradient = [quad, xdual](const TruncatedVector& x) {
          const double m = *std::max_element(x.values().begin(), x.values().end());
          std::vector<double> g(x.size());
          double s = 0.0;
          for (std::size_t k = 0; k < x.size(); ++k) s += (g[k] = std::exp(x[k] - m));
          const auto qg = quad.gradient(x);
          for (std::size_t k = 0; k < x.size(); ++k) g[k] = g[k] / s + qg[k];
          return TruncatedVector(std::move(g), xdual);
        };
        y = random_point();
        qx = f.gradient(t.apply(y));
        break;
      }
      case 1: {  // sup-norm at a dyadic point
        f = supnorm_fn();
        y = random_point();
        const auto x = t.apply(y);
        std::size_t j = 0;
        for (std::size_t k = 1; k < n; ++k)
          if (std::abs(x[k]) > std::abs(x[j])) j = k;
        if (x[j] != 0.0) qx = TruncatedVector::basis(n, j, xdual, x[j] > 0.0 ? 1.0 : -1.0);
        break;
      }
      case 2: {  // the PGNF at 0
        if (!pgnf)
          pgnf = std::make_shared<ConvexFn>(pgnf_construct(jn_basis_sequence(n, xdual), n,
                                                           SeparatingFamily::coordinate(n, t.codomain()),
                                                           cfg.budget));
        f = *pgnf;
        break;
      }
      default:  // sup-norm at 0
        f = supnorm_fn();
        break;
    }
    const auto ft = compose(f, t);
    const auto rep = classify_point(ft, y, t.adjoint_apply(qx), pc);
    if (rep.gateaux_pass) {
      ++passes;
      if (rep.classification == PointClass::frechet) ++upgrades;
      else if (rep.classification == PointClass::inconclusive) ++inconclusive;
    } else {
      ++not_gateaux;
    }
  }
  const bool ok = passes > 0 && upgrades == passes;
  leg.status = ok ? LegStatus::pass : LegStatus::fail;
  leg.metrics = {{"instances", static_cast<double>(cfg.instances)},
                 {"gateaux_passes", static_cast<double>(passes)},
                 {"frechet_upgrades", static_cast<double>(upgrades)},
                 {"not_gateaux", static_cast<double>(not_gateaux)},
                 {"inconclusive_after_pass", static_cast<double>(inconclusive)}};
  leg.labels = {{"candidate_derivative", "T* applied to the derivative of f at T(y)"}};
  leg.note = "every Gateaux pass of f o T must be a Frechet pass";
  return leg;
}

/// Runs the limited-operator test at each N against the basis spec, then the
/// "only if" leg when bounded below and the "if" leg when null.
inline ExperimentReport theorem_main_experiment(const OperatorFamily& op, const std::vector<std::size_t>& n_sweep,
                                                const ExperimentConfig& cfg = {}) {
  if (n_sweep.empty()) throw SetupError("N sweep is empty");
  ExperimentReport rep;
  rep.experiment = "main";
  rep.operator_name = op.name;
  rep.n_sweep = n_sweep;
  for (std::size_t n : n_sweep) {
    if (n == 0) throw DimensionError("N must be >= 1");
    const auto t = op.make(n);
    if (t.in_dim() != t.out_dim()) throw DimensionError("theorem experiments need square operators");
    const auto lim =
        limited_operator_test(t, {jn_basis_sequence(n, dual_of(t.codomain()))}, n, cfg.limited_rule);
    rep.limited.push_back(lim);
    if (lim.decay_classification == LimitedClass::bounded_below) {
      rep.legs.push_back(only_if_leg(t, n, cfg, op.name == "identity"));
    } else if (lim.decay_classification == LimitedClass::null) {
      rep.legs.push_back(if_leg(t, n, cfg));
    } else {
      LegResult leg;
      leg.leg = "undecided";
      leg.n = n;
      leg.status = LegStatus::inconclusive;
      leg.note = "limited test inconclusive at this truncation; no leg run";
      rep.legs.push_back(std::move(leg));
    }
  }
  return rep;
}

/// Extracts a JN witness from the minimising sequences of h on K: a sequence
/// that is minimising, weak*-null and bounded away in norm. With no such
/// sequence (for instance K = {0}) the leg is inconclusive, not failed.
inline LegResult jn_extraction_leg(const PolytopeDomain& k, const SeparatingFamily& family,
                                   const std::vector<DualSequence>& sequences, std::size_t horizon,
                                   const TailRule& rule) {
  LegResult leg;
  leg.leg = "3=>2";
  leg.n = k.dim();
  const auto h = seminorm_fn(family);
  const auto zero = TruncatedVector::zeros(k.dim(), k.tag());
  const auto rep = classify_minimum(h, k, family, zero, sequences, horizon, rule);
  for (std::size_t s = 0; s < rep.traces.size(); ++s) {
    const auto& tr = rep.traces[s];
    if (!(tr.minimizing && tr.d_null && tr.norm_bounded_away)) continue;
    JNSequenceSpec spec;
    spec.name = "extracted";
    spec.dim = k.dim();
    spec.length = horizon;
    spec.dual_tag = k.tag();
    spec.generator = sequences[s];
    spec.norm_floor = *std::min_element(tr.dual_norms.begin(), tr.dual_norms.end());
    const auto jn = check_jn(spec, horizon);
    leg.metrics = {{"min_norm", jn.min_norm}, {"max_tail_pairing", jn.max_tail_pairing}};
    leg.status = jn.norm_floor_ok && jn.weakstar_null_ok && jn.min_norm > 0.0 ? LegStatus::pass : LegStatus::fail;
    leg.note = "stuck minimising sequence is a JN witness";
    return leg;
  }
  leg.status = LegStatus::inconclusive;
  leg.note = "no JN witness: no minimising sequence is weak*-null with norms bounded below";
  leg.labels = {{"minimum", to_string(rep.classification)}};
  return leg;
}

/// The five-way equivalence for the identity at each N, plus a dense-range
/// limited operator check (diag 2^-n): Gateaux points of f o T are Frechet.
inline ExperimentReport bbf_equivalence_suite(const std::vector<std::size_t>& n_sweep,
                                              const ExperimentConfig& cfg = {}) {
  if (n_sweep.empty()) throw SetupError("N sweep is empty");
  ExperimentReport rep;
  rep.experiment = "bbf";
  rep.operator_name = "identity";
  rep.n_sweep = n_sweep;
  for (std::size_t n : n_sweep) {
    if (n == 0) throw DimensionError("N must be >= 1");
    const auto spec = jn_basis_sequence(n);
    const auto k = build_K(spec, n);
    const auto family = SeparatingFamily::coordinate(n);
    const auto h = seminorm_fn(family);
    const auto zero = TruncatedVector::zeros(n, spec.dual_tag);
    const std::vector<DualSequence> seqs{spec.generator};

    {  // (2) => (3)
      LegResult leg;
      leg.leg = "2=>3";
      leg.n = n;
      const auto m = classify_minimum(h, k, family, zero, seqs, n, cfg.rule);
      leg.status = m.classification == MinimumClass::weakstar_strong ? LegStatus::pass : LegStatus::fail;
      const auto& tr = m.traces.front();
      leg.metrics = {{"value_tail_max", *std::max_element(tr.value_gaps.end() - (n + 3) / 4, tr.value_gaps.end())},
                     {"d_tail_max", *std::max_element(tr.d_distances.end() - (n + 3) / 4, tr.d_distances.end())},
                     {"norm_tail_min", *std::min_element(tr.dual_norms.end() - (n + 3) / 4, tr.dual_norms.end())}};
      leg.labels = {{"minimum", to_string(m.classification)}};
      leg.note = "h on K has a weak*-strong, not norm-strong, minimum at 0";
      rep.legs.push_back(std::move(leg));
    }
    rep.legs.push_back(jn_extraction_leg(k, family, seqs, n, cfg.rule));

    const auto id = LinearOp::identity(n);
    {  // (2) => (4)
      LegResult leg;
      leg.leg = "2=>4";
      leg.n = n;
      const auto lim = limited_operator_test(id, {spec}, n, cfg.limited_rule);
      rep.limited.push_back(lim);
      leg.status = lim.decay_classification == LimitedClass::bounded_below ? LegStatus::pass : LegStatus::fail;
      leg.metrics = {{"floor_estimate", lim.floor_estimate}};
      leg.labels = {{"classification", to_string(lim.decay_classification)}};
      leg.note = "the identity is not limited";
      rep.legs.push_back(std::move(leg));
    }
    {  // (4) => (5)
      auto leg = only_if_leg(id, n, cfg, true);
      leg.leg = "4=>5";
      rep.legs.push_back(std::move(leg));
    }
    {  // (5) => (2): conjugate maximisers at the Frechet witnesses t_k e_k
      LegResult leg;
      leg.leg = "5=>2";
      leg.n = n;
      const auto window = pgnf_scale_window(n);
      std::vector<TruncatedVector> pts;
      for (std::size_t i = 0; i < window.frechet_scales.size(); ++i)
        pts.push_back(conjugate_over_polytope(h, k,
                                              TruncatedVector::basis(n, i, SpaceTag::c0(), window.frechet_scales[i]),
                                              cfg.budget)
                          .argmax);
      const auto m = classify_minimum(h, k, family, zero, {[&pts](std::size_t i) { return pts[i]; }}, pts.size(),
                                      cfg.rule);
      const auto& tr = m.traces.front();
      const double min_norm = *std::min_element(tr.dual_norms.begin(), tr.dual_norms.end());
      const bool ok = tr.minimizing && tr.d_null && tr.norm_bounded_away;
      leg.status = ok ? LegStatus::pass : LegStatus::fail;
      leg.metrics = {{"min_norm", min_norm},
                     {"d_tail_max", *std::max_element(tr.d_distances.end() - (pts.size() + 3) / 4, tr.d_distances.end())}};
      leg.labels = {{"minimum", to_string(m.classification)}};
      leg.note = "maximisers of the PGNF conjugate at the witnesses minimise h with norms bounded below";
      rep.legs.push_back(std::move(leg));
    }
    {  // dense-range limited operator
      auto leg = if_leg(dyadic_family().make(n), n, cfg);
      leg.leg = "dense-range";
      rep.legs.push_back(std::move(leg));
    }
  }
  return rep;
}

}  // namespace limop

#pragma once

// Quantitative Gateaux and Frechet probes built on the first-order
// remainder quotient  (f(x + t d) - f(x) - t <q, d>) / t  with ||d|| = 1.
//
// At a fixed truncation every Gateaux point of a convex function is a
// Frechet point, so all verdicts here are relative to a scale window.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "limop/conjugate.hpp"
#include "limop/convex_fn.hpp"
#include "limop/errors.hpp"
#include "limop/spaces.hpp"
#include "limop/weakstar.hpp"

namespace limop {

inline double difference_quotient(const ConvexFn& f, const TruncatedVector& x, const TruncatedVector& q,
                                  const TruncatedVector& d, double t, double fx) {
  const double moved = f(axpy(x, t, d));
  if (!std::isfinite(moved)) throw NonFinite("f is not finite at a probe point");
  return (moved - fx - t * pairing(q, d)) / t;
}

inline double difference_quotient(const ConvexFn& f, const TruncatedVector& x, const TruncatedVector& q,
                                  const TruncatedVector& d, double t) {
  const double fx = f(x);
  if (!std::isfinite(fx)) throw NonFinite("f is not finite at the base point");
  return difference_quotient(f, x, q, d, t, fx);
}

/// t = 2^-j for j = 0..J with 2^-J >= sqrt(eps) * (1 + ||x||).
inline std::vector<double> default_scale_grid(const TruncatedVector& x) {
  const double floor_t = std::sqrt(std::numeric_limits<double>::epsilon()) * (1.0 + norm(x));
  std::vector<double> out;
  for (int j = 0; std::ldexp(1.0, -j) >= floor_t; ++j) out.push_back(std::ldexp(1.0, -j));
  return out;
}

struct ScaleWindow {
  std::vector<double> gateaux_scales;  // decreasing
  std::vector<double> frechet_scales;  // decreasing
};

/// Window resolved by the basis-built PGNF at truncation N: Gateaux scales
/// 2^(-j/2), j < N (every kink 2^(-n/2) of the coordinate directions), and
/// Frechet scales 2^(1-n/2), n < N (where e_n is a witness with quotient 1/2).
inline ScaleWindow pgnf_scale_window(std::size_t n) {
  ScaleWindow w;
  for (std::size_t j = 0; j < n; ++j) w.gateaux_scales.push_back(std::sqrt(std::ldexp(1.0, -static_cast<int>(j))));
  for (std::size_t k = 0; k < n; ++k)
    w.frechet_scales.push_back(2.0 * std::sqrt(std::ldexp(1.0, -static_cast<int>(k))));
  if (w.frechet_scales.empty()) w.frechet_scales = w.gateaux_scales;
  return w;
}

inline std::vector<TruncatedVector> signed_basis(std::size_t n, SpaceTag tag) {
  std::vector<TruncatedVector> out;
  out.reserve(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(TruncatedVector::basis(n, k, tag, 1.0));
    out.push_back(TruncatedVector::basis(n, k, tag, -1.0));
  }
  return out;
}

/// Random unit vectors. For sup-norm spaces coordinates lie on the dyadic
/// lattice k/128 with one coordinate at +-1, so x + t d is exact for dyadic
/// x and t across the whole default window.
inline std::vector<TruncatedVector> random_unit_directions(std::size_t n, SpaceTag tag, std::size_t count,
                                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<TruncatedVector> out;
  out.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<double> v(n);
    if (tag.norm == NormKind::sup) {
      std::uniform_int_distribution<int> lattice(-128, 128);
      for (auto& x : v) x = lattice(rng) / 128.0;
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      v[pick(rng)] = (rng() & 1u) ? 1.0 : -1.0;
    } else {
      std::normal_distribution<double> gauss;
      for (auto& x : v) x = gauss(rng);
      const double nrm = norm_of(v, tag.norm);
      if (nrm == 0.0) v[0] = 1.0;
      else for (auto& x : v) x /= nrm;
    }
    out.emplace_back(std::move(v), tag);
  }
  return out;
}

/// All +-e_k plus `random_count` seeded random unit vectors.
inline std::vector<TruncatedVector> default_sphere_samples(std::size_t n, SpaceTag tag,
                                                           std::size_t random_count = 64,
                                                           std::uint64_t seed = 0x5eed) {
  auto out = signed_basis(n, tag);
  auto extra = random_unit_directions(n, tag, random_count, seed);
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

struct ProbeEntry {
  double t = 0.0;
  double quotient = 0.0;
};

struct DirectionTable {
  TruncatedVector direction;
  std::vector<ProbeEntry> entries;  // in t_grid order
};

struct GateauxResult {
  bool pass = false;
  std::vector<DirectionTable> table;
  double max_final_quotient = 0.0;  // max |quotient| at the smallest t
  double max_asymmetry = 0.0;       // max |D(d) + D(-d)| over listed +-pairs
};

namespace detail {

inline void check_scales(const std::vector<double>& ts) {
  if (ts.empty()) throw SetupError("scale grid is empty");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ts[i] > 0.0)) throw SetupError("scales must be positive");
    if (i > 0 && !(ts[i] < ts[i - 1])) throw SetupError("scales must be strictly decreasing");
  }
}

inline void check_unit(const TruncatedVector& d) {
  if (std::abs(norm(d) - 1.0) > 1e-12) throw SetupError("probe directions must be unit vectors");
}

}  // namespace detail

/// Per-direction quotient tables. Passes when every quotient at the smallest
/// scale is within tol of 0 and the estimated directional derivative
/// D(d) = <q,d> + quotient is odd on every listed pair (d, -d). For a convex
/// function, oddness on +-e_k forces the directional derivative to be linear.
inline GateauxResult gateaux_probe(const ConvexFn& f, const TruncatedVector& x, const TruncatedVector& q,
                                   const std::vector<TruncatedVector>& directions,
                                   const std::vector<double>& t_grid, double tol) {
  detail::check_scales(t_grid);
  const double fx = f(x);
  if (!std::isfinite(fx)) throw NonFinite("f is not finite at the base point");
  GateauxResult res;
  std::vector<double> finals;
  for (const auto& d : directions) {
    detail::check_unit(d);
    DirectionTable row{d, {}};
    for (double t : t_grid) row.entries.push_back({t, difference_quotient(f, x, q, d, t, fx)});
    finals.push_back(row.entries.back().quotient);
    res.max_final_quotient = std::max(res.max_final_quotient, std::abs(finals.back()));
    res.table.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < directions.size(); ++i)
    for (std::size_t j = i + 1; j < directions.size(); ++j) {
      if (directions[j] != (-1.0) * directions[i]) continue;
      const double di = pairing(q, directions[i]) + finals[i];
      const double dj = pairing(q, directions[j]) + finals[j];
      res.max_asymmetry = std::max(res.max_asymmetry, std::abs(di + dj));
    }
  res.pass = res.max_final_quotient <= tol && res.max_asymmetry <= 2.0 * tol;
  return res;
}

struct FrechetEntry {
  double t = 0.0;
  double sup_quotient = 0.0;
  double min_quotient = 0.0;
  TruncatedVector witness;       // maximising sample
  TruncatedVector lead_witness;  // first sample (in sample order) reaching half the sup
};

inline FrechetEntry frechet_modulus(const ConvexFn& f, const TruncatedVector& x, const TruncatedVector& q,
                                    double t, const std::vector<TruncatedVector>& sphere_samples) {
  if (!(t > 0.0)) throw SetupError("frechet_modulus needs t > 0");
  if (sphere_samples.empty()) throw SetupError("frechet_modulus needs sphere samples");
  const double fx = f(x);
  if (!std::isfinite(fx)) throw NonFinite("f is not finite at the base point");
  FrechetEntry e{t, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                 sphere_samples.front(), sphere_samples.front()};
  std::vector<double> quotients;
  quotients.reserve(sphere_samples.size());
  for (const auto& d : sphere_samples) {
    detail::check_unit(d);
    const double qv = difference_quotient(f, x, q, d, t, fx);
    quotients.push_back(qv);
    if (qv > e.sup_quotient) {
      e.sup_quotient = qv;
      e.witness = d;
    }
    e.min_quotient = std::min(e.min_quotient, qv);
  }
  e.lead_witness = e.witness;
  if (e.sup_quotient > 0.0)
    for (std::size_t i = 0; i < quotients.size(); ++i)
      if (quotients[i] >= 0.5 * e.sup_quotient) {
        e.lead_witness = sphere_samples[i];
        break;
      }
  return e;
}

enum class PointClass { frechet, gateaux_only, not_gateaux, inconclusive };

inline std::string to_string(PointClass c) {
  switch (c) {
    case PointClass::frechet: return "frechet";
    case PointClass::gateaux_only: return "gateaux-only";
    case PointClass::not_gateaux: return "not-gateaux";
    case PointClass::inconclusive: return "inconclusive";
  }
  return "unknown";
}

struct ProbeConfig {
  ScaleWindow window;                             // empty scales -> default grid
  std::vector<TruncatedVector> gateaux_directions;  // empty -> +-e_k
  std::vector<TruncatedVector> sphere_samples;      // empty -> default_sphere_samples
  double tol = 1e-6;
  std::size_t random_directions = 64;
  std::uint64_t seed = 0x5eed;
};

struct DiffReport {
  TruncatedVector point;
  TruncatedVector candidate_derivative;
  GateauxResult gateaux;
  std::vector<FrechetEntry> frechet_table;
  bool gateaux_pass = false;
  double frechet_modulus_floor = 0.0;
  double smallest_scale_sup = 0.0;
  bool subgradient_consistent = true;  // no quotient below -tol
  PointClass classification = PointClass::inconclusive;
  ScaleWindow window;
  double tol = 0.0;
  std::string note;
};

/// Resolves defaults in the config against the probe point.
inline ProbeConfig resolve_config(ProbeConfig cfg, const TruncatedVector& x) {
  if (cfg.window.gateaux_scales.empty()) cfg.window.gateaux_scales = default_scale_grid(x);
  if (cfg.window.frechet_scales.empty()) cfg.window.frechet_scales = cfg.window.gateaux_scales;
  if (cfg.gateaux_directions.empty()) cfg.gateaux_directions = signed_basis(x.size(), x.tag());
  if (cfg.sphere_samples.empty())
    cfg.sphere_samples = default_sphere_samples(x.size(), x.tag(), cfg.random_directions, cfg.seed);
  if (!(cfg.tol > 0.0)) throw SetupError("probe tolerance must be positive");
  return cfg;
}

/// frechet: Gateaux passes and the sup-quotient at the smallest Frechet scale
/// is within tol. gateaux-only: Gateaux passes and the sup-quotient stays at
/// least 10*tol across every Frechet scale. not-gateaux: the Gateaux probe
/// fails. Anything else is inconclusive.
inline DiffReport classify_point(const ConvexFn& f, const TruncatedVector& x, const TruncatedVector& q,
                                 ProbeConfig config = {}) {
  const auto cfg = resolve_config(std::move(config), x);
  detail::check_scales(cfg.window.frechet_scales);
  DiffReport rep{x, q, {}, {}, false, 0.0, 0.0, true, PointClass::inconclusive, cfg.window, cfg.tol, {}};
  rep.gateaux = gateaux_probe(f, x, q, cfg.gateaux_directions, cfg.window.gateaux_scales, cfg.tol);
  rep.gateaux_pass = rep.gateaux.pass;
  rep.frechet_modulus_floor = std::numeric_limits<double>::infinity();
  for (double t : cfg.window.frechet_scales) {
    auto e = frechet_modulus(f, x, q, t, cfg.sphere_samples);
    rep.frechet_modulus_floor = std::min(rep.frechet_modulus_floor, e.sup_quotient);
    if (e.min_quotient < -cfg.tol) rep.subgradient_consistent = false;
    rep.frechet_table.push_back(std::move(e));
  }
  rep.smallest_scale_sup = rep.frechet_table.back().sup_quotient;

  if (!rep.gateaux_pass) rep.classification = PointClass::not_gateaux;
  else if (rep.smallest_scale_sup <= cfg.tol) rep.classification = PointClass::frechet;
  else if (rep.frechet_modulus_floor >= 10.0 * cfg.tol) rep.classification = PointClass::gateaux_only;
  else rep.classification = PointClass::inconclusive;
  rep.note =
      "verdict is relative to the probed scale window; at fixed N every Gateaux point of a convex "
      "function is eventually Frechet";
  return rep;
}

// ---------------------------------------------------------------------------
// Duality cross-check: Gateaux <-> weak*-strong minimum of the conjugate,
// Frechet <-> norm-strong minimum.

struct CrosscheckResult {
  bool consistent = false;
  PointClass point_class = PointClass::inconclusive;
  MinimumClass min_class = MinimumClass::inconclusive;
  DiffReport diff;
  std::vector<SequenceTrace> traces;
};

inline bool dictionary_agrees(PointClass pc, MinimumClass mc) {
  switch (pc) {
    case PointClass::frechet: return mc == MinimumClass::norm_strong;
    case PointClass::gateaux_only: return mc == MinimumClass::weakstar_strong;
    case PointClass::not_gateaux: return mc == MinimumClass::neither;
    case PointClass::inconclusive: return false;
  }
  return false;
}

/// f must be the conjugate of f.known_conjugate (= g) over K. The minimum
/// side examines p -> g(p) - <p, x> on K at q, along the maximisers of the
/// conjugate at the probe points x + t d: one sequence per Gateaux direction
/// over the Gateaux scales, plus the sequence of lead Frechet witnesses.
inline CrosscheckResult duality_crosscheck(const ConvexFn& f, const TruncatedVector& x,
                                           const TruncatedVector& q, const PolytopeDomain& k,
                                           const SeparatingFamily& family, ProbeConfig config = {},
                                           const TailRule& rule = {}, const SolverBudget& budget = {}) {
  if (!f.known_conjugate) throw SetupError("duality_crosscheck needs the known conjugate of f");
  const ConvexFn& g = *f.known_conjugate;
  const auto cfg = resolve_config(std::move(config), x);

  CrosscheckResult out;
  out.diff = classify_point(f, x, q, cfg);
  out.point_class = out.diff.classification;

  ConvexFn tilted;
  tilted.name = "conjugate_minus_pairing";
  tilted.evaluator = [&g, x](const TruncatedVector& p) { return g(p) - pairing(p, x); };
  const double min_value = tilted(q);
  if (!k.contains(q, rule.membership_tol)) throw NotInDomain("candidate derivative lies outside K");

  auto argmax_at = [&](const TruncatedVector& d, double t) {
    return conjugate_over_polytope(g, k, axpy(x, t, d), budget).argmax;
  };

  for (const auto& d : cfg.gateaux_directions) {
    std::vector<TruncatedVector> pts;
    for (double t : cfg.window.gateaux_scales) pts.push_back(argmax_at(d, t));
    out.traces.push_back(trace_sequence(
        tilted, k, family, q, min_value, [&pts](std::size_t i) { return pts[i]; }, pts.size(), rule));
  }
  std::vector<TruncatedVector> witness_pts;
  for (const auto& e : out.diff.frechet_table) witness_pts.push_back(argmax_at(e.lead_witness, e.t));
  out.traces.push_back(trace_sequence(
      tilted, k, family, q, min_value, [&witness_pts](std::size_t i) { return witness_pts[i]; },
      witness_pts.size(), rule));

  out.min_class = classify_traces(out.traces);
  out.consistent = dictionary_agrees(out.point_class, out.min_class);
  return out;
}

}  // namespace limop

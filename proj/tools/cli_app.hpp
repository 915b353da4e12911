#pragma once

// limop command-line front end. run() is separate from main() so the test
// suite can drive the commands in-process.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "limop/limop.hpp"

namespace limop::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitLegFailed = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitSolver = 3;

/// Bad user input after CLI11 accepted the flags (exit 2).
struct ParseFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 0x5eed;
  double tol = 1e-6;
  std::string config;

  std::string fn = "supnorm";
  std::size_t n = 0;  // 0: infer from --point
  std::string point = "0";
  std::string q;  // empty: natural candidate for --fn
  std::string coeffs;
  std::string p;
  double radius = 3.0;
  int grid = 41;

  std::string op = "identity";
  std::string diag = "harmonic";
  std::size_t horizon = 0;  // 0: N

  std::string mode;  // theorem: main | bbf
  std::string n_sweep = "10,20,40";
  std::size_t instances = 20;
  int max_iters = 2000;
};

inline std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ParseFailure(std::string("malformed ") + what + ": '" + s + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size() || !std::isfinite(v))
      throw ParseFailure(std::string("malformed ") + what + ": '" + s + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ParseFailure(std::string("empty ") + what);
  return out;
}

/// "a,b,c" with N = 0 or N = 3; a single value broadcasts to N.
inline TruncatedVector parse_vector(const std::string& s, std::size_t n, SpaceTag tag, const char* what) {
  auto v = parse_list(s, what);
  if (n == 0) n = v.size();
  if (v.size() == 1 && n > 1) v.assign(n, v.front());
  if (v.size() != n) throw ParseFailure(std::string(what) + " has the wrong length");
  return TruncatedVector(std::move(v), tag);
}

/// "e<k>", "0", or a list.
inline TruncatedVector parse_dual(const std::string& s, std::size_t n, SpaceTag tag) {
  if (s.size() > 1 && s[0] == 'e') {
    std::size_t k = 0, used = 0;
    try {
      k = std::stoul(s.substr(1), &used);
    } catch (const std::exception&) {
      throw ParseFailure("malformed --q: '" + s + "'");
    }
    if (used + 1 != s.size() || k >= n) throw ParseFailure("malformed --q: '" + s + "'");
    return TruncatedVector::basis(n, k, tag);
  }
  return parse_vector(s, n, tag, "--q");
}

inline std::vector<std::size_t> parse_sweep(const std::string& s) {
  std::vector<std::size_t> out;
  for (double v : parse_list(s, "--N-sweep")) {
    if (v < 1 || v != std::floor(v)) throw ParseFailure("--N-sweep entries must be positive integers");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

inline OperatorFamily operator_family(const Settings& s) {
  if (s.op == "identity") return identity_family();
  if (s.op == "zero") return zero_family();
  if (s.op == "dense") return dense_family(s.seed);
  if (s.op == "diag") {
    if (s.diag == "harmonic") return harmonic_family();
    if (s.diag == "dyadic") return dyadic_family();
    throw ParseFailure("unknown --diag '" + s.diag + "'");
  }
  throw ParseFailure("unknown --op '" + s.op + "'");
}

inline Json settings_json(const Settings& s, const std::string& command) {
  Json j{{"format", s.format}, {"seed", s.seed}, {"tol", s.tol}};
  if (command == "probe-diff" || command == "conjugate" || command == "pgnf") {
    j["fn"] = s.fn;
    j["N"] = s.n;
    j["point"] = s.point;
    j["q"] = s.q;
    j["coeffs"] = s.coeffs;
    j["p"] = s.p;
    j["radius"] = s.radius;
    j["grid"] = s.grid;
    j["max_iters"] = s.max_iters;
  } else if (command == "limited") {
    j["op"] = s.op;
    j["diag"] = s.diag;
    j["N"] = s.n;
    j["horizon"] = s.horizon;
  } else {
    j["mode"] = s.mode;
    j["op"] = s.op;
    j["diag"] = s.diag;
    j["N_sweep"] = s.n_sweep;
    j["instances"] = s.instances;
    j["max_iters"] = s.max_iters;
  }
  return j;
}

struct Output {
  Json json;
  std::string csv;
  int code = kExitOk;
};

inline Json tolerances_json(const Settings& s, const TailRule& rule = {}, const LimitedRule& lrule = {}) {
  return Json{{"probe_tol", s.tol}, {"tail_rule", to_json(rule)}, {"limited_rule", to_json(lrule)}};
}

inline SolverBudget budget_of(const Settings& s) {
  SolverBudget b;
  b.max_iters = s.max_iters;
  b.validate();
  return b;
}

inline ConvexFn probe_function(const Settings& s, std::size_t n, TruncatedVector* q_default,
                               const TruncatedVector& x) {
  const SpaceTag dual = SpaceTag::l1_dual();
  if (s.fn == "supnorm") {
    std::size_t j = 0;
    for (std::size_t k = 1; k < n; ++k)
      if (std::abs(x[k]) > std::abs(x[j])) j = k;
    *q_default = x[j] == 0.0 ? TruncatedVector::zeros(n, dual)
                             : TruncatedVector::basis(n, j, dual, x[j] > 0.0 ? 1.0 : -1.0);
    return supnorm_fn();
  }
  if (s.fn == "linear") {
    if (s.coeffs.empty()) throw ParseFailure("--fn linear needs --coeffs");
    auto q = parse_vector(s.coeffs, n, dual, "--coeffs");
    *q_default = q;
    return linear_fn(q);
  }
  if (s.fn == "quadratic") {
    auto a = s.coeffs.empty() ? std::vector<double>(n, 1.0) : parse_vector(s.coeffs, n, dual, "--coeffs").values();
    for (double c : a)
      if (c < 0.0) throw ParseFailure("--coeffs must be nonnegative for --fn quadratic");
    auto f = diag_quadratic_fn(a);
    *q_default = f.gradient(x);
    return f;
  }
  if (s.fn == "pgnf") {
    *q_default = TruncatedVector::zeros(n, dual);
    return pgnf_construct(jn_basis_sequence(n), n, SeparatingFamily::coordinate(n), budget_of(s));
  }
  throw ParseFailure("unknown --fn '" + s.fn + "'");
}

inline Output cmd_probe_diff(const Settings& s) {
  const auto x = parse_vector(s.point, s.n, SpaceTag::c0(), "--point");
  const std::size_t n = x.size();
  TruncatedVector q_default;
  const auto f = probe_function(s, n, &q_default, x);
  const auto q = s.q.empty() ? q_default : parse_dual(s.q, n, SpaceTag::l1_dual());
  ProbeConfig pc;
  pc.tol = s.tol;
  pc.seed = s.seed;
  if (s.fn == "pgnf") pc.window = pgnf_scale_window(n);
  const auto rep = classify_point(f, x, q, pc);
  Output o;
  o.json = envelope("probe-diff", settings_json(s, "probe-diff"), s.seed, n, to_json(rep.window),
                    tolerances_json(s), to_json(rep));
  o.csv = csv_of(rep);
  return o;
}

inline Output cmd_conjugate(const Settings& s) {
  Output o;
  if (s.fn == "seminorm" || s.fn == "pgnf") {
    // (h + indicator of K)^* at --point with K = hull{e_0..e_{N-1}, 0}
    const auto x = parse_vector(s.point, s.n, SpaceTag::c0(), "--point");
    const std::size_t n = x.size();
    const auto k = build_K(jn_basis_sequence(n), n);
    const auto r = conjugate_over_polytope(seminorm_fn(SeparatingFamily::coordinate(n)), k, x, budget_of(s));
    o.json = envelope("conjugate", settings_json(s, "conjugate"), s.seed, n, Json(nullptr), tolerances_json(s),
                      to_json(r));
    o.csv = csv_of(r);
    return o;
  }
  // grid conjugate of a primal function at a dual point --p
  if (s.p.empty()) throw ParseFailure("conjugate --fn " + s.fn + " needs --p");
  const auto p = parse_vector(s.p, s.n, SpaceTag::l1_dual(), "--p");
  const std::size_t n = p.size();
  const auto x0 = TruncatedVector::zeros(n, SpaceTag::c0());
  TruncatedVector unused;
  const auto f = probe_function(s, n, &unused, x0);
  const double v = fenchel_conjugate_grid(f, p, s.radius, s.grid);
  Json body{{"value", v}, {"radius", s.radius}, {"grid", s.grid}, {"p", to_json(p)}};
  o.json = envelope("conjugate", settings_json(s, "conjugate"), s.seed, n, Json(nullptr), tolerances_json(s), body);
  o.csv = "field,value\nvalue," + format_double(v) + "\n";
  return o;
}

inline Output cmd_pgnf(const Settings& s) {
  const auto x = parse_vector(s.point, s.n, SpaceTag::c0(), "--point");
  const std::size_t n = x.size();
  const auto spec = jn_basis_sequence(n);
  const auto family = SeparatingFamily::coordinate(n);
  const auto budget = budget_of(s);
  const auto f = pgnf_construct(spec, n, family, budget);
  const auto k = build_K(spec, n);
  const auto at_x = conjugate_over_polytope(*f.known_conjugate, k, x, budget);
  const auto window = pgnf_scale_window(n);
  const auto zero = TruncatedVector::zeros(n, SpaceTag::c0());
  const auto q0 = TruncatedVector::zeros(n, SpaceTag::l1_dual());
  Json witnesses = Json::array();
  std::ostringstream csv;
  csv << "n,t,f_value,quotient\n";
  for (std::size_t i = 0; i < n; ++i) {
    const double t = window.frechet_scales[i];
    const auto e = TruncatedVector::basis(n, i, SpaceTag::c0());
    const double fv = f(TruncatedVector::basis(n, i, SpaceTag::c0(), t));
    const double qv = difference_quotient(f, zero, q0, e, t);
    witnesses.push_back(Json{{"n", i}, {"t", t}, {"f_value", fv}, {"quotient", qv}});
    csv << i << ',' << format_double(t) << ',' << format_double(fv) << ',' << format_double(qv) << '\n';
  }
  Json body{{"value", at_x.value},
            {"argmax", to_json(at_x.argmax)},
            {"exact", at_x.exact},
            {"lipschitz_bound", *f.lipschitz_bound},
            {"f_at_zero", f(zero)},
            {"witnesses", witnesses}};
  Output o;
  o.json = envelope("pgnf", settings_json(s, "pgnf"), s.seed, n, to_json(window), tolerances_json(s), body);
  o.csv = csv.str();
  return o;
}

inline Output cmd_limited(const Settings& s) {
  const std::size_t n = s.n == 0 ? 64 : s.n;
  const auto fam = operator_family(s);
  const auto t = fam.make(n);
  const auto rep = limited_operator_test(t, {jn_basis_sequence(n)}, s.horizon == 0 ? n : s.horizon);
  Json body = to_json(rep);
  body["operator"] = fam.name;
  Output o;
  o.json = envelope("limited", settings_json(s, "limited"), s.seed, n, Json(nullptr), tolerances_json(s),
                    std::move(body));
  o.csv = csv_of(rep);
  return o;
}

inline Output cmd_theorem(const Settings& s) {
  const auto sweep = parse_sweep(s.n_sweep);
  ExperimentConfig cfg;
  cfg.tol = s.tol;
  cfg.seed = s.seed;
  cfg.instances = s.instances;
  cfg.budget = budget_of(s);
  ExperimentReport rep;
  if (s.mode == "main") rep = theorem_main_experiment(operator_family(s), sweep, cfg);
  else if (s.mode == "bbf") rep = bbf_equivalence_suite(sweep, cfg);
  else throw ParseFailure("theorem needs 'main' or 'bbf'");
  Json windows = Json::object();
  Json ns = Json::array();
  for (auto n : sweep) {
    windows[std::to_string(n)] = to_json(pgnf_scale_window(n));
    ns.push_back(n);
  }
  Output o;
  o.json = envelope("theorem " + s.mode, settings_json(s, "theorem"), s.seed, ns, windows,
                    tolerances_json(s, cfg.rule, cfg.limited_rule), to_json(rep));
  o.csv = csv_of(rep);
  o.code = rep.all_pass() ? kExitOk : kExitLegFailed;
  return o;
}

// ---------------------------------------------------------------------------

namespace detail {

template <class T>
void merge_from(const Json& cfg, const char* key, const CLI::Option* opt, T& target) {
  if (opt->count() > 0 || !cfg.contains(key)) return;
  try {
    target = cfg.at(key).get<T>();
  } catch (const std::exception& e) {
    throw ParseFailure(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace detail

/// Runs one command. Exit codes: 0 done, 1 a theorem leg failed, 2 bad
/// input, 3 solver or numerical error.
inline int run(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"limop: limited operators and differentiability experiments"};
  app.require_subcommand(1);
  Settings s;

  struct Bound {
    CLI::App* sub;
    CLI::Option* opt;
    std::function<void(const Json&, const CLI::Option*)> merge;
  };
  std::vector<Bound> bound;
  auto add = [&](CLI::App* sub, const char* flag, const char* key, auto& target, const char* help) {
    auto* opt = sub->add_option(flag, target, help);
    bound.push_back({sub, opt, [key, &target](const Json& cfg, const CLI::Option* o) {
                       detail::merge_from(cfg, key, o, target);
                     }});
    return opt;
  };
  auto common = [&](CLI::App* sub) {
    add(sub, "--out", "out", s.out, "output path (default stdout)");
    add(sub, "--format", "format", s.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    add(sub, "--seed", "seed", s.seed, "random seed");
    add(sub, "--tol", "tol", s.tol, "probe tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--config", s.config, "JSON config file; flags override it");
  };

  auto* probe = app.add_subcommand("probe-diff", "Gateaux/Frechet probe of a built-in function");
  common(probe);
  add(probe, "--fn", "fn", s.fn, "supnorm | pgnf | linear | quadratic");
  add(probe, "--N", "N", s.n, "truncation (default: length of --point)");
  add(probe, "--point", "point", s.point, "comma list, or one value broadcast to N");
  add(probe, "--q", "q", s.q, "candidate derivative: e<k>, 0 or a list");
  add(probe, "--coeffs", "coeffs", s.coeffs, "coefficients for linear / quadratic");
  add(probe, "--max-iters", "max_iters", s.max_iters, "solver iteration budget");

  auto* conj = app.add_subcommand("conjugate", "conjugate over the basis simplex, or on a grid");
  common(conj);
  add(conj, "--fn", "fn", s.fn, "seminorm (exact over K) | supnorm | linear | quadratic (grid)");
  add(conj, "--N", "N", s.n, "truncation");
  add(conj, "--point", "point", s.point, "primal point for --fn seminorm");
  add(conj, "--p", "p", s.p, "dual point for grid conjugates");
  add(conj, "--coeffs", "coeffs", s.coeffs, "coefficients for linear / quadratic");
  add(conj, "--radius", "radius", s.radius, "grid box radius")->check(CLI::PositiveNumber);
  add(conj, "--grid", "grid", s.grid, "odd grid point count per axis");
  add(conj, "--max-iters", "max_iters", s.max_iters, "solver iteration budget");

  auto* lim = app.add_subcommand("limited", "limited-operator test against the basis JN sequence");
  common(lim);
  add(lim, "--op", "op", s.op, "identity | diag | zero | dense");
  add(lim, "--diag", "diag", s.diag, "harmonic | dyadic (with --op diag)");
  add(lim, "--N", "N", s.n, "truncation (default 64)");
  add(lim, "--horizon", "horizon", s.horizon, "sequence horizon (default N)");

  auto* thm = app.add_subcommand("theorem", "end-to-end experiments: main | bbf");
  common(thm);
  thm->add_option("mode", s.mode, "main or bbf")->required()->check(CLI::IsMember({"main", "bbf"}));
  add(thm, "--N-sweep", "N_sweep", s.n_sweep, "comma list of truncations");
  add(thm, "--op", "op", s.op, "identity | diag | zero | dense (main only)");
  add(thm, "--diag", "diag", s.diag, "harmonic | dyadic");
  add(thm, "--instances", "instances", s.instances, "random instances in the 'if' leg");
  add(thm, "--max-iters", "max_iters", s.max_iters, "solver iteration budget");

  auto* pg = app.add_subcommand("pgnf", "evaluate the basis-built PGNF and its witness table");
  common(pg);
  add(pg, "--N", "N", s.n, "truncation");
  add(pg, "--point", "point", s.point, "primal point");
  add(pg, "--max-iters", "max_iters", s.max_iters, "solver iteration budget");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }
  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();

  try {
    if (!s.config.empty()) {
      std::ifstream in(s.config);
      if (!in) throw ParseFailure("cannot read config file '" + s.config + "'");
      Json cfg;
      try {
        cfg = Json::parse(in);
      } catch (const std::exception& e) {
        throw ParseFailure(std::string("config file is not JSON: ") + e.what());
      }
      if (!cfg.is_object()) throw ParseFailure("config file must hold a JSON object");
      for (auto& b : bound)
        if (b.sub == sub) b.merge(cfg, b.opt);
    }
    if (!(s.tol > 0.0)) throw ParseFailure("--tol must be positive");
    if (s.format != "json" && s.format != "csv") throw ParseFailure("--format must be json or csv");

    Output o;
    if (command == "probe-diff") o = cmd_probe_diff(s);
    else if (command == "conjugate") o = cmd_conjugate(s);
    else if (command == "limited") o = cmd_limited(s);
    else if (command == "theorem") o = cmd_theorem(s);
    else o = cmd_pgnf(s);

    const std::string text = s.format == "csv" ? o.csv : dump_deterministic(o.json);
    if (s.out.empty()) {
      out << text;
    } else {
      std::ofstream f(s.out, std::ios::binary);
      if (!f) throw ParseFailure("cannot write '" + s.out + "'");
      f << text;
    }
    return o.code;
  } catch (const ParseFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  }
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args), out, err);
}

}  // namespace limop::cli

#pragma once

// JSON and CSV emission for every report type. JSON output goes through a
// deterministic dumper: keys keep insertion order and every double is
// printed with 17 significant digits, so equal reports are equal bytes.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "limop/conjugate.hpp"
#include "limop/differentiability.hpp"
#include "limop/limited.hpp"
#include "limop/spaces.hpp"
#include "limop/weakstar.hpp"

namespace limop {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "limop 0.1.0";

inline std::string format_double(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void dump_into(const Json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        dump_into(it.value(), out, indent, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // arrays of scalars stay on one line
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        dump_into(e, out, indent, depth + 1);
      }
      out += flat ? "]" : "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float: out += format_double(j.get<double>()); return;
    default: out += j.dump(); return;
  }
}

}  // namespace detail

/// Deterministic pretty printer (17 significant digits for every double).
inline std::string dump_deterministic(const Json& j, int indent = 2) {
  std::string out;
  detail::dump_into(j, out, indent, 0);
  out += "\n";
  return out;
}

inline Json to_json(const SpaceTag& t) { return to_string(t); }

inline Json to_json(const TruncatedVector& v) {
  Json a = Json::array();
  for (double c : v.values()) a.push_back(c);
  return a;
}

inline Json to_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double c : v) a.push_back(c);
  return a;
}

inline Json to_json(const ScaleWindow& w) {
  return Json{{"gateaux_scales", to_json(w.gateaux_scales)}, {"frechet_scales", to_json(w.frechet_scales)}};
}

inline Json to_json(const TailRule& r) {
  return Json{{"value_tol", r.value_tol},
              {"d_tol", r.d_tol},
              {"norm_tol", r.norm_tol},
              {"decay_ratio", r.decay_ratio},
              {"membership_tol", r.membership_tol}};
}

inline Json to_json(const LimitedRule& r) {
  return Json{{"null_ratio", r.null_ratio}, {"floor_ratio", r.floor_ratio}, {"abs_tol", r.abs_tol}};
}

inline Json to_json(const SolverBudget& b) {
  return Json{{"max_iters", b.max_iters}, {"tol", b.tol}, {"oracle_grid_points", b.oracle_grid_points}};
}

inline Json to_json(const ConjugateResult& r) {
  return Json{{"value", r.value},
              {"argmax", to_json(r.argmax)},
              {"gap", r.gap},
              {"certified", r.certified},
              {"iterations", r.iterations},
              {"exact", r.exact}};
}

inline Json to_json(const DiffReport& r) {
  Json gateaux = Json::array();
  for (const auto& row : r.gateaux.table) {
    Json qs = Json::array();
    for (const auto& e : row.entries) qs.push_back(e.quotient);
    gateaux.push_back(Json{{"direction", to_json(row.direction)}, {"quotients", qs}});
  }
  Json frechet = Json::array();
  for (const auto& e : r.frechet_table)
    frechet.push_back(Json{{"t", e.t},
                           {"sup_quotient", e.sup_quotient},
                           {"min_quotient", e.min_quotient},
                           {"witness", to_json(e.witness)},
                           {"lead_witness", to_json(e.lead_witness)}});
  return Json{{"classification", to_string(r.classification)},
              {"point", to_json(r.point)},
              {"candidate_derivative", to_json(r.candidate_derivative)},
              {"gateaux_pass", r.gateaux_pass},
              {"gateaux_max_final_quotient", r.gateaux.max_final_quotient},
              {"gateaux_max_asymmetry", r.gateaux.max_asymmetry},
              {"frechet_modulus_floor", r.frechet_modulus_floor},
              {"smallest_scale_sup", r.smallest_scale_sup},
              {"subgradient_consistent", r.subgradient_consistent},
              {"note", r.note},
              {"gateaux_table", gateaux},
              {"frechet_table", frechet}};
}

inline Json to_json(const LimitedReport& r) {
  Json per = Json::array();
  for (const auto& s : r.per_spec)
    per.push_back(Json{{"spec", s.spec},
                       {"classification", to_string(s.classification)},
                       {"floor_estimate", s.floor_estimate},
                       {"sup_values", to_json(s.sup_values)}});
  return Json{{"decay_classification", to_string(r.decay_classification)},
              {"verdict", r.verdict},
              {"floor_estimate", r.floor_estimate},
              {"witness_spec", r.witness_spec},
              {"sup_values", to_json(r.sup_values)},
              {"rule", to_json(r.rule)},
              {"per_spec", per}};
}

inline Json to_json(const LegResult& l) {
  Json metrics = Json::object();
  for (const auto& [k, v] : l.metrics) metrics[k] = v;
  Json labels = Json::object();
  for (const auto& [k, v] : l.labels) labels[k] = v;
  return Json{{"leg", l.leg},
              {"N", l.n},
              {"status", to_string(l.status)},
              {"note", l.note},
              {"metrics", metrics},
              {"labels", labels}};
}

inline Json to_json(const ExperimentReport& r) {
  Json legs = Json::array();
  for (const auto& l : r.legs) legs.push_back(to_json(l));
  Json limited = Json::array();
  for (const auto& l : r.limited) limited.push_back(to_json(l));
  Json sweep = Json::array();
  for (auto n : r.n_sweep) sweep.push_back(n);
  return Json{{"experiment", r.experiment},
              {"operator", r.operator_name},
              {"N_sweep", sweep},
              {"all_pass", r.all_pass()},
              {"legs", legs},
              {"limited", limited}};
}

/// Common envelope: version, command, config echo, seed, N, window and
/// tolerances around the command-specific body.
inline Json envelope(const std::string& command, const Json& config, std::uint64_t seed, const Json& n,
                     const Json& window, const Json& tolerances, Json body) {
  return Json{{"version", kVersion},
              {"command", command},
              {"config", config},
              {"seed", seed},
              {"N", n},
              {"scale_window", window},
              {"tolerances", tolerances},
              {"result", std::move(body)}};
}

// ---------------------------------------------------------------------------
// CSV: flat projections of the table fields

inline std::string csv_of(const DiffReport& r) {
  std::ostringstream os;
  os << "table,row,t,quotient\n";
  for (std::size_t i = 0; i < r.gateaux.table.size(); ++i)
    for (const auto& e : r.gateaux.table[i].entries)
      os << "gateaux," << i << ',' << format_double(e.t) << ',' << format_double(e.quotient) << '\n';
  for (std::size_t i = 0; i < r.frechet_table.size(); ++i)
    os << "frechet_sup," << i << ',' << format_double(r.frechet_table[i].t) << ','
       << format_double(r.frechet_table[i].sup_quotient) << '\n';
  return os.str();
}

inline std::string csv_of(const LimitedReport& r) {
  std::ostringstream os;
  os << "spec,n,sup_value\n";
  for (const auto& s : r.per_spec)
    for (std::size_t n = 0; n < s.sup_values.size(); ++n)
      os << s.spec << ',' << n << ',' << format_double(s.sup_values[n]) << '\n';
  return os.str();
}

inline std::string csv_of(const ExperimentReport& r) {
  std::ostringstream os;
  os << "leg,N,status,metric,value\n";
  for (const auto& l : r.legs) {
    if (l.metrics.empty()) os << l.leg << ',' << l.n << ',' << to_string(l.status) << ",,\n";
    for (const auto& [k, v] : l.metrics)
      os << l.leg << ',' << l.n << ',' << to_string(l.status) << ',' << k << ',' << format_double(v) << '\n';
  }
  return os.str();
}

inline std::string csv_of(const ConjugateResult& r) {
  std::ostringstream os;
  os << "field,index,value\n";
  os << "value,," << format_double(r.value) << '\n';
  os << "gap,," << format_double(r.gap) << '\n';
  for (std::size_t i = 0; i < r.argmax.size(); ++i) os << "argmax," << i << ',' << format_double(r.argmax[i]) << '\n';
  return os.str();
}

}  // namespace limop

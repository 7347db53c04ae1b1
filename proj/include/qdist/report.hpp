#ifndef QDIST_REPORT_HPP
#define QDIST_REPORT_HPP

#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdist/config.hpp"
#include "qdist/counting.hpp"
#include "qdist/io.hpp"
#include "qdist/sharpness.hpp"
#include "qdist/theorem.hpp"
#include "qdist/verify.hpp"

namespace qdist {

using Json = nlohmann::ordered_json;

inline Json to_json(const FieldSpec& s) {
  return Json{{"spec", s.to_string()}, {"p", s.p}, {"ell", s.ell}, {"q", s.q}, {"modulus", s.modulus}};
}

inline Json to_json(const std::set<Element>& xs) {
  Json a = Json::array();
  for (auto x : xs) a.push_back(x.index());
  return a;
}

inline Json to_json(const std::vector<Element>& xs) {
  Json a = Json::array();
  for (auto x : xs) a.push_back(x.index());
  return a;
}

inline Json to_json(const FormInput& form) {
  const auto& s = form.standard;
  Json j{{"input", form.description},
         {"dim", s.dim()},
         {"epsilon", s.epsilon().index()},
         {"eta_epsilon", s.eta_epsilon()},
         {"case", to_string(bound_case(s))},
         {"standard_coefficients", to_json(s.coefficients())}};
  return j;
}

/// Fields shared by every report: enough to re-run it.
inline Json report_header(const RunConfig& cfg, const FieldSpec& field) {
  Json j;
  j["version"] = kVersion;
  j["command"] = cfg.command;
  j["config"] = cfg.to_json(false);
  j["field"] = to_json(field);
  j["seed"] = cfg.seed;
  return j;
}

inline Json to_json(const CountReport& c) {
  return Json{{"r", c.r.index()}, {"W", c.W}, {"M", c.M}, {"w0", c.w0}};
}

inline Json to_json(const W0BoundReport& w) {
  return Json{{"part", w.part}, {"w0", w.w0}, {"bound", to_string(w.bound)}, {"holds", w.holds}};
}

inline Json to_json(const TheoremClaim& c) {
  return Json{{"part", c.part},
              {"size_condition_met", c.size_condition_met},
              {"hypotheses_met", c.hypotheses_met},
              {"applicable", c.applicable()},
              {"bound", to_string(c.bound)},
              {"holds", c.holds},
              {"pass", c.pass()}};
}

inline Json to_json(const BoundReport& b) {
  Json claims = Json::array();
  for (const auto& c : b.claims) claims.push_back(to_json(c));
  return Json{{"r", b.r.index()},
              {"case", to_string(b.case_label)},
              {"W", b.W},
              {"M", b.M},
              {"w0", b.w0},
              {"case_rhs", to_string(b.case_rhs)},
              {"case_holds", b.case_holds},
              {"size_condition_met", b.size_condition_met()},
              {"claims", claims},
              {"pass", b.pass()}};
}

inline Json to_json(const CorollaryReport& c) {
  Json claims = Json::array();
  for (const auto& x : c.claims)
    claims.push_back(Json{{"part", x.part},
                          {"relation", x.relation},
                          {"condition_met", x.condition_met},
                          {"relation_holds", x.relation_holds},
                          {"pass", x.pass()}});
  return Json{{"quotient", to_json(c.quotient)}, {"claims", claims}, {"pass", c.pass()}};
}

inline Json to_json(const SharpnessSpec& spec, const SharpnessReport& r) {
  const Field& f = spec.form.field();
  std::vector<Element> nonsquare_vanishing;
  for (auto x : r.vanishing_ratios)
    if (f.eta(x) == -1) nonsquare_vanishing.push_back(x);
  Json j{{"kind", to_string(spec.kind)},
         {"dim", spec.dim},
         {"epsilon", spec.form.epsilon().index()},
         {"size", r.size},
         {"expected_size", spec.expected_size},
         {"size_matches", r.size_matches},
         {"relation", spec.relation},
         {"distances", to_json(r.distances)},
         {"quotient", to_json(r.quotient)},
         {"square_count", r.square_count},
         {"half_q_plus_one", (f.q() + 1) / 2},
         {"quotient_equals_squares", r.quotient_equals_squares},
         {"quotient_within_squares", r.quotient_within_squares},
         {"quotient_strictly_within_squares", r.quotient_strictly_within_squares},
         {"vanishing_ratios", to_json(r.vanishing_ratios)},
         {"nonsquare_vanishing_ratios", to_json(nonsquare_vanishing)},
         {"nonsquares_vanish", r.nonsquares_vanish}};
  if (spec.kind == SharpnessKind::OddII) {
    j["delta"] = *spec.delta;
    j["progression_length"] = spec.progression_length;
    j["difference_size"] = r.difference_size;
  }
  j["pass"] = r.pass(spec.kind);
  return j;
}

inline Json to_json(const SuiteResult& s) {
  return Json{{"name", s.name},
              {"checks", s.checks},
              {"failures", s.failures},
              {"witnesses", s.witnesses},
              {"pass", s.pass()}};
}

/// Display-only rendering; the exact value is the coefficient vector.
inline std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // drop negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10f", x);
  std::string s = buf;
  if (s == "-0.0000000000") s = "0.0000000000";
  return s;
}

}  // namespace qdist

#endif  // QDIST_REPORT_HPP

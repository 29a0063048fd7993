#pragma once

// Result-record construction shared by the CLI and the tests. One place
// defines the key order, the big-integer-as-decimal-string convention,
// and the CSV row layout, so batch outputs stay byte-stable.

#include <cstdio>
#include <string>

#include <json.hpp>

#include "pexeq/contfrac.hpp"
#include "pexeq/sieve.hpp"
#include "pexeq/solver.hpp"
#include "pexeq/version.hpp"

namespace pexeq::records {

using ordered_json = nlohmann::ordered_json;

inline std::string zstr(const mpz_class& n) { return n.get_str(); }

// Fixed-width quality formatting keeps records byte-stable across runs.
inline std::string format_quality(double q) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.8f", q);
  return buf;
}

inline ordered_json condition_json(const ConditionResult& c) {
  switch (c.state) {
    case ConditionState::pass:
      return true;
    case ConditionState::fail:
      return false;
    default:
      return "n/a";
  }
}

inline const char* mode_str(Mode m) { return m == Mode::S ? "S" : "N"; }

inline ordered_json base_record(const char* command) {
  ordered_json rec;
  rec["tool"] = kToolName;
  rec["version"] = kVersion;
  rec["command"] = command;
  return rec;
}

inline ordered_json solve_record(const SolutionSet& set) {
  ordered_json rec = base_record("solve");
  rec["exhaustive"] = set.exhaustive_within_bounds;
  rec["count"] = set.solutions.size();
  ordered_json sols = ordered_json::array();
  for (const auto& s : set.solutions)
    sols.push_back(ordered_json{{"x", s.x}, {"y", s.y}, {"z", s.z}});
  rec["solutions"] = sols;
  rec["config"] = ordered_json{{"mode", mode_str(set.mode)},
                               {"a", zstr(set.a)},
                               {"b", zstr(set.b)},
                               {"c", zstr(set.c)},
                               {"max_z", set.bounds.max_z},
                               {"max_bits", set.bounds.max_bits}};
  return rec;
}

inline ordered_json sieve_record(const SieveReport& rep, const ordered_json& config) {
  ordered_json rec = base_record("sieve");
  rec["p"] = zstr(rep.p);
  rec["q"] = zstr(rep.q);
  rec["cong48"] = condition_json(rep.cong48);
  rec["val_order"] = condition_json(rep.val_order);
  rec["order_parity"] = condition_json(rep.order_parity);
  rec["octic"] = condition_json(rep.octic);
  rec["size_p"] = rep.size_p;
  rec["size_q"] = rep.size_q;
  rec["mod24_class"] = rep.mod24_class;
  rec["survives"] = rep.survives;
  ordered_json notes = ordered_json::object();
  if (!rep.order_parity.note.empty()) notes["order_parity"] = rep.order_parity.note;
  if (!rep.octic.note.empty()) notes["octic"] = rep.octic.note;
  rec["notes"] = notes;
  rec["config"] = config;
  return rec;
}

inline std::string csv_header() {
  return "p,q,cong48,val_order,order_parity,octic,size_p,size_q,survives";
}

inline std::string csv_condition(const ConditionResult& c) {
  switch (c.state) {
    case ConditionState::pass:
      return "true";
    case ConditionState::fail:
      return "false";
    default:
      return "na";
  }
}

inline std::string csv_row(const SieveReport& rep) {
  std::string row = zstr(rep.p) + "," + zstr(rep.q);
  row += "," + csv_condition(rep.cong48);
  row += "," + csv_condition(rep.val_order);
  row += "," + csv_condition(rep.order_parity);
  row += "," + csv_condition(rep.octic);
  row += rep.size_p ? ",true" : ",false";
  row += rep.size_q ? ",true" : ",false";
  row += rep.survives ? ",true" : ",false";
  return row;
}

inline ordered_json convergent_json(const Convergent& c) {
  return ordered_json{{"m", c.m}, {"P", zstr(c.P)}, {"Q", zstr(c.Q)}, {"k", zstr(c.k)}};
}

inline ordered_json period_json(const std::vector<mpz_class>& period) {
  ordered_json arr = ordered_json::array();
  for (const auto& a : period) arr.push_back(zstr(a));
  return arr;
}

inline ordered_json cf_expansion_record(const SurdExpansion& e,
                                        const std::vector<Convergent>& conv,
                                        size_t terms) {
  ordered_json rec = base_record("cf");
  rec["kind"] = "expansion";
  rec["d"] = zstr(e.D);
  rec["a0"] = zstr(e.a0);
  rec["period"] = period_json(e.period);
  rec["period_length"] = e.period.size();
  ordered_json cj = ordered_json::array();
  for (const auto& c : conv) cj.push_back(convergent_json(c));
  rec["convergents"] = cj;
  rec["config"] = ordered_json{{"d", zstr(e.D)}, {"terms", terms}};
  return rec;
}

inline ordered_json cf_lemma35_record(const Lemma35Family& fam,
                                      const SurdExpansion& direct,
                                      const std::vector<Convergent>& direct_conv,
                                      bool match) {
  ordered_json rec = base_record("cf");
  rec["kind"] = "lemma35";
  rec["p"] = zstr(fam.p);
  rec["n"] = fam.n;
  rec["d"] = zstr(fam.D);
  rec["a0"] = zstr(fam.expansion.a0);
  rec["predicted_period"] = period_json(fam.expansion.period);
  rec["expanded_period"] = period_json(direct.period);
  ordered_json pj = ordered_json::array(), dj = ordered_json::array(),
               kj = ordered_json::array();
  for (const auto& c : fam.convergents) {
    pj.push_back(convergent_json(c));
    kj.push_back(zstr(c.k));
  }
  for (const auto& c : direct_conv) dj.push_back(convergent_json(c));
  rec["predicted_convergents"] = pj;
  rec["expanded_convergents"] = dj;
  rec["k_sequence"] = kj;
  rec["match"] = match;
  rec["config"] = ordered_json{{"p", zstr(fam.p)}, {"n", fam.n}};
  return rec;
}

inline ordered_json abcq_record(const AbcTriple& t) {
  ordered_json rec = base_record("abcq");
  rec["a"] = zstr(t.a);
  rec["b"] = zstr(t.b);
  rec["c"] = zstr(t.c);
  rec["rad"] = zstr(t.rad);
  rec["quality"] = format_quality(t.quality);
  rec["config"] =
      ordered_json{{"a", zstr(t.a)}, {"b", zstr(t.b)}, {"c", zstr(t.c)}};
  return rec;
}

}  // namespace pexeq::records

#pragma once

// JSON views of traces and reports. Exact values (big integers, rational
// functions) are written as strings; keys keep insertion order.

#include <json.hpp>

#include "lsplp/lp.hpp"
#include "lsplp/strategy_improvement.hpp"
#include "lsplp/verify.hpp"

namespace lsplp::cli {

using Json = nlohmann::ordered_json;

inline Json optional_int(const std::optional<int>& x) { return x ? Json(*x) : Json(nullptr); }

// Chosen edge per vertex, null where the vertex makes no choice.
inline Json strategy_json(const Strategy& s) {
  Json out = Json::array();
  for (int c : s.choices()) out.push_back(c < 0 ? Json(nullptr) : Json(c));
  return out;
}

inline Json rule_json(const ImprovementRule& r) {
  Json out{{"rule", std::string(to_string(r.kind))}};
  if (r.kind == RuleKind::RandomEdge) out["seed"] = r.seed;
  return out;
}

inline Json si_trace_json(const SiTrace& t, const ImprovementRule& rule) {
  Json steps = Json::array();
  for (const SiStep& s : t.steps) {
    Json vals = Json::array();
    for (const BigInt& v : s.valuation.values) vals.push_back(v.get_str());
    steps.push_back({{"strategy", strategy_json(s.strategy)},
                     {"valuation", vals},
                     {"improving", s.improving},
                     {"switched", optional_int(s.switched)}});
  }
  Json out = rule_json(rule);
  out["switches"] = t.switches();
  out["final_strategy"] = strategy_json(t.final_strategy());
  out["steps"] = steps;
  return out;
}

inline Json basis_json(const LpModel& m, const Basis& B) {
  Json out = Json::array();
  for (int c : B.columns) out.push_back(m.column_name(c));
  return out;
}

inline Json column_json(const LpModel& m, const std::optional<int>& c) {
  return c ? Json(m.column_name(*c)) : Json(nullptr);
}

inline Json simplex_trace_json(const LpModel& m, const SimplexTrace& t) {
  Json steps = Json::array();
  for (const SimplexStep& s : t.steps) {
    Json costs = Json::object();
    for (const auto& [col, d] : s.reduced_costs) costs[m.column_name(col)] = d.reduced().to_string();
    steps.push_back({{"basis", basis_json(m, s.basis)},
                     {"objective", s.objective.reduced().to_string()},
                     {"reduced_costs", costs},
                     {"negative", s.negative},
                     {"entering", column_json(m, s.entering)},
                     {"leaving", column_json(m, s.leaving)}});
  }
  return {{"pivots", t.pivots()}, {"sign_decisions", t.decisions.size()}, {"steps", steps}};
}

inline Json report_json(const EquivalenceReport& r, const std::optional<BigInt>& t0) {
  Json out{{"instance", r.instance_id}};
  out.update(rule_json(r.rule));
  out["verdict"] = r.match ? "Match" : "Mismatch";
  out["switches"] = r.steps;
  if (!r.match) {
    out["mismatch_step"] = r.mismatch_step ? Json(*r.mismatch_step) : Json(nullptr);
    out["detail"] = r.detail;
  }
  Json steps = Json::array();
  for (const LockstepRecord& s : r.records)
    steps.push_back({{"strategy", strategy_json(s.strategy)},
                     {"improving", s.improving},
                     {"negative", s.negative},
                     {"switched", optional_int(s.switched)},
                     {"entering", optional_int(s.entering)},
                     {"leaving", optional_int(s.leaving)}});
  out["steps"] = steps;
  if (t0) out["t0"] = t0->get_str();
  return out;
}

}  // namespace lsplp::cli

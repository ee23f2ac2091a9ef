#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lsplp/arena.hpp"
#include "lsplp/reduce.hpp"
#include "lsplp/rules.hpp"
#include "lsplp/walks.hpp"

namespace lsplp {

// Shortest-path weight to the sink in G_sigma for every vertex.
struct Valuation {
  std::vector<BigInt> values;

  const BigInt& operator[](int v) const { return values.at(v); }
  bool operator==(const Valuation&) const = default;
};

// Bellman-Ford towards the sink. Admissibility rules out nonpositive cycles,
// so n - 1 rounds suffice.
inline Valuation valuation(const Arena& a, const Strategy& s) {
  if (!a.sink()) throw PreconditionError("valuation needs an arena with a sink");
  const EdgeSubgraph g = restrict_to_strategy(a, s);
  if (!cycles_all_positive(g)) throw PreconditionError("inadmissible strategy");
  const int n = a.num_vertices();
  std::vector<std::optional<BigInt>> d(n);
  d[*a.sink()] = BigInt(0);
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (const Edge& e : g.edges) {
      if (g.is_sink_loop(e) || !d[e.head]) continue;
      BigInt cand = e.weight + *d[e.head];
      if (!d[e.tail] || cand < *d[e.tail]) {
        d[e.tail] = std::move(cand);
        changed = true;
      }
    }
    if (!changed) break;
  }
  Valuation out;
  for (int v = 0; v < n; ++v) {
    if (!d[v]) throw PreconditionError("sink unreachable from vertex " + std::to_string(v));
    out.values.push_back(*d[v]);
  }
  return out;
}

// Max choice edges with w(v, v') + val(v') > val(v), ascending ids.
inline std::vector<int> improving_edges(const Arena& a, const Strategy&, const Valuation& val) {
  std::vector<int> out;
  for (const Edge& e : a.edges()) {
    if (a.owner(e.tail) != Owner::Max || a.is_sink(e.tail)) continue;
    if (e.weight + val[e.head] > val[e.tail]) out.push_back(e.id);
  }
  return out;
}

// The valuation gain w(e) + val(head) - val(tail) of an edge.
inline BigInt improvement(const Arena& a, const Valuation& val, int e) {
  const Edge& x = a.edge(e);
  return x.weight + val[x.head] - val[x.tail];
}

struct SiStep {
  Strategy strategy;
  Valuation valuation;
  std::vector<int> improving;
  std::optional<int> switched;
};

struct SiTrace {
  std::vector<SiStep> steps;

  std::size_t switches() const { return steps.empty() ? 0 : steps.size() - 1; }
  const Strategy& final_strategy() const { return steps.back().strategy; }
};

// Strategy improvement with one switch per iteration.
inline SiTrace run_si(const Arena& a, const Strategy& s0, ImprovementRule rule,
                      std::size_t max_steps = 1'000'000) {
  if (!is_admissible(a, s0)) throw PreconditionError("initial strategy is not admissible");
  RuleSelector selector(rule);
  SiTrace trace;
  Strategy s = s0;
  for (std::size_t step = 0;; ++step) {
    if (step > max_steps) throw Error("strategy improvement exceeded the step limit");
    Valuation val = valuation(a, s);
    std::vector<int> imp = improving_edges(a, s, val);
    trace.steps.push_back({s, val, imp, std::nullopt});
    if (imp.empty()) return trace;
    const int e = selector.select(std::span<const int>(imp), [&](std::size_t i) {
      return improvement(a, val, imp[i]);
    });
    if (improvement(a, val, e) <= 0) throw InternalError("rule selected a non-improving edge");
    trace.steps.back().switched = e;
    s = apply_switch(a, s, e);
  }
}

// An admissible starting strategy: all-retreat when every Max vertex has an
// edge into the sink and that choice is admissible, otherwise the first
// admissible strategy (with the sink reachable everywhere) in enumeration
// order. Throws PreconditionError("no initial strategy") when none is found
// within the cap.
inline Strategy initial_strategy(const Arena& a, std::uint64_t cap = kDefaultStrategyCap) {
  auto usable = [&](const Strategy& s) {
    if (!is_admissible(a, s)) return false;
    try {
      valuation(a, s);
      return true;
    } catch (const PreconditionError&) {
      return false;
    }
  };
  if (auto s = all_retreat_strategy(a); s && usable(*s)) return *s;
  if (count_strategies(a) > cap) throw PreconditionError("no initial strategy");
  for (const Strategy& s : enumerate_strategies(a, cap))
    if (usable(s)) return s;
  throw PreconditionError("no initial strategy");
}

}  // namespace lsplp

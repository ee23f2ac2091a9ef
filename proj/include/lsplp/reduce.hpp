#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lsplp/arena.hpp"
#include "lsplp/walks.hpp"

namespace lsplp {

// Makes all priorities distinct: while some priority p is shared, keep the
// member with the lowest edge id and add 2 to every other priority >= p.
// Parities and the relative order of distinct priorities are preserved.
// The sink loop of a sink parity game is left alone.
inline Arena uniquify_priorities(const Arena& a) {
  if (a.kind() != ArenaKind::Parity && a.kind() != ArenaKind::SinkParity)
    throw PreconditionError("uniquify_priorities needs a parity or sink parity arena");
  std::vector<BigInt> pr;
  std::vector<int> ids;
  for (const Edge& e : a.edges()) {
    pr.push_back(e.weight);
    if (a.kind() == ArenaKind::SinkParity && a.is_sink_loop(e.id)) continue;
    if (e.weight < 0) throw PreconditionError("priority of edge " + std::to_string(e.id) + " is negative");
    ids.push_back(e.id);
  }
  for (;;) {
    std::optional<BigInt> dup;
    int keep = -1;
    std::map<BigInt, int> first;
    for (int id : ids) {
      auto [it, fresh] = first.try_emplace(pr[id], id);
      if (!fresh && (!dup || pr[id] < *dup)) {
        dup = pr[id];
        keep = it->second;
      }
    }
    if (!dup) break;
    for (int id : ids)
      if (id != keep && pr[id] >= *dup) pr[id] += 2;
  }
  return a.with_weights(pr, a.kind());
}

// (-n)^p for a priority p.
inline BigInt parity_weight(const BigInt& priority, int n) {
  if (priority < 0 || !priority.fits_ulong_p())
    throw PreconditionError("priority out of range: " + priority.get_str());
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(n), priority.get_ui());
  if (mpz_odd_p(priority.get_mpz_t())) out = -out;
  return out;
}

// weight(e) := (-|V|)^priority(e).
inline Arena parity_to_mpg(const Arena& a) {
  if (a.kind() != ArenaKind::Parity) throw PreconditionError("parity_to_mpg needs a parity arena");
  std::vector<BigInt> w;
  for (const Edge& e : a.edges()) w.push_back(parity_weight(e.weight, a.num_vertices()));
  return a.with_weights(w, ArenaKind::Mpg);
}

// Same transform on non-sink edges; the sink loop gets weight 0.
inline Arena sink_parity_to_lsp(const Arena& a) {
  if (a.kind() != ArenaKind::SinkParity)
    throw PreconditionError("sink_parity_to_lsp needs a sink parity arena");
  std::vector<BigInt> w;
  for (const Edge& e : a.edges())
    w.push_back(a.is_sink_loop(e.id) ? BigInt(0) : parity_weight(e.weight, a.num_vertices()));
  return a.with_weights(w, ArenaKind::Lsp);
}

// weight(e) := 2^n * weight(e) + 2^{tail(e)}, with vertex ids 0..n-1 playing
// the role of v_1..v_n. The sink loop keeps weight 0. Afterwards no cycle
// has weight 0, the sign of every other cycle is kept, and (without
// parallel edges) distinct sink paths with acyclic union differ in weight.
inline Arena perturb_mpg(const Arena& a) {
  if (a.kind() != ArenaKind::Mpg && a.kind() != ArenaKind::Lsp)
    throw PreconditionError("perturb_mpg needs an MPG or LSP arena");
  const auto n = static_cast<unsigned long>(a.num_vertices());
  std::vector<BigInt> w;
  for (const Edge& e : a.edges()) {
    if (a.is_sink_loop(e.id)) {
      w.emplace_back(0);
      continue;
    }
    BigInt scaled = e.weight;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), n);
    BigInt bit;
    mpz_setbit(bit.get_mpz_t(), static_cast<mp_bitcnt_t>(e.tail));
    w.push_back(scaled + bit);
  }
  return a.with_weights(w, a.kind());
}

// Subtracts the threshold from every weight, adds a fresh sink (the last
// vertex) with a 0-weight loop and a 0-weight retreat edge from every Max
// vertex to it. Original edges keep their ids; retreat edges follow in vertex
// order and the sink loop comes last. No perturbation is applied.
inline Arena add_retreat_sink(const Arena& a, const BigInt& threshold) {
  if (a.kind() != ArenaKind::Mpg) throw PreconditionError("add_retreat_sink needs an MPG arena");
  const int n = a.num_vertices();
  std::vector<Owner> owners = a.owners();
  owners.push_back(Owner::Max);
  std::vector<Edge> edges;
  for (const Edge& e : a.edges()) edges.push_back({e.id, e.tail, e.head, e.weight - threshold});
  for (int v = 0; v < n; ++v)
    if (a.owner(v) == Owner::Max) edges.push_back({static_cast<int>(edges.size()), v, n, BigInt(0)});
  edges.push_back({static_cast<int>(edges.size()), n, n, BigInt(0)});
  return Arena(ArenaKind::Lsp, std::move(owners), std::move(edges), n);
}

// The strategy sending every Max vertex straight to the sink, along its
// highest-numbered edge into the sink. nullopt if some Max vertex has none.
inline std::optional<Strategy> all_retreat_strategy(const Arena& a) {
  if (!a.sink()) return std::nullopt;
  std::vector<int> c(a.num_vertices(), -1);
  for (int v : a.choice_vertices()) {
    for (int e : a.out_edges(v))
      if (a.edge(e).head == *a.sink()) c[v] = e;
    if (c[v] < 0) return std::nullopt;
  }
  return Strategy(std::move(c));
}

enum class ConditionStatus { Holds, Fails, Unverified };

inline std::string_view to_string(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::Holds: return "holds";
    case ConditionStatus::Fails: return "fails";
    case ConditionStatus::Unverified: return "unverified";
  }
  return "?";
}

struct LspValidationReport {
  ConditionStatus max_admissible = ConditionStatus::Unverified;  // condition 2
  ConditionStatus min_admissible = ConditionStatus::Unverified;  // condition 3
  std::vector<std::string> notes;
};

inline std::uint64_t count_min_strategies(const Arena& a) {
  std::uint64_t count = 1;
  for (int v = 0; v < a.num_vertices(); ++v) {
    if (a.owner(v) != Owner::Min) continue;
    const std::uint64_t d = a.out_edges(v).size();
    if (count > (std::uint64_t{1} << 62) / d) return UINT64_MAX;
    count *= d;
  }
  return count;
}

// Condition 3: some Min strategy tau leaves only negative cycles in G_tau.
// Decided exactly by enumerating Min strategies up to the cap.
inline ConditionStatus check_min_admissible(const Arena& a, std::uint64_t cap = kDefaultStrategyCap) {
  if (count_min_strategies(a) > cap) return ConditionStatus::Unverified;
  std::vector<int> mins;
  for (int v = 0; v < a.num_vertices(); ++v)
    if (a.owner(v) == Owner::Min) mins.push_back(v);
  std::vector<std::size_t> digit(mins.size(), 0);
  for (;;) {
    // Negated weights turn "all cycles negative" into "all cycles positive".
    EdgeSubgraph g{a.num_vertices(), {}, a.sink()};
    for (const Edge& e : a.edges()) {
      const bool keep = a.owner(e.tail) == Owner::Max ||
                        a.out_edges(e.tail)[digit[std::find(mins.begin(), mins.end(), e.tail) -
                                                  mins.begin()]] == e.id;
      if (keep) g.edges.push_back({e.id, e.tail, e.head, -e.weight});
    }
    if (cycles_all_positive(g)) return ConditionStatus::Holds;
    std::size_t i = mins.size();
    for (;;) {
      if (i == 0) return ConditionStatus::Fails;
      --i;
      if (++digit[i] < a.out_edges(mins[i]).size()) break;
      digit[i] = 0;
    }
  }
}

struct MpgToLspResult {
  Arena lsp;
  LspValidationReport report;
};

// Retreat-edge construction followed by perturb_mpg. Condition 2 is checked
// on the all-retreat strategy, condition 3 by exhaustive Min strategies
// within the cap; the report never claims more than was checked.
inline MpgToLspResult mpg_to_lsp(const Arena& a, const BigInt& threshold,
                                 std::uint64_t cap = kDefaultStrategyCap) {
  Arena lsp = perturb_mpg(add_retreat_sink(a, threshold));
  LspValidationReport r;
  if (auto s = all_retreat_strategy(lsp); s && is_admissible(lsp, *s)) {
    r.max_admissible = ConditionStatus::Holds;
  } else {
    r.notes.push_back("all-retreat strategy is not admissible: a Min-only cycle is nonpositive");
  }
  r.min_admissible = check_min_admissible(lsp, cap);
  if (r.min_admissible == ConditionStatus::Fails)
    r.notes.push_back("no Min strategy makes every cycle negative");
  else if (r.min_admissible == ConditionStatus::Unverified)
    r.notes.push_back("Min strategy count exceeds the cap; condition 3 not checked");
  return {std::move(lsp), std::move(r)};
}

// ---------------------------------------------------------------------------
// Nondegeneracy, checked exhaustively on small graphs.

// Calls f(edge ids) once for every simple cycle of g other than the sink
// loop. Parallel edges give distinct cycles. Each cycle is reported from its
// smallest vertex.
inline void for_each_simple_cycle(const EdgeSubgraph& g,
                                  const std::function<void(const std::vector<int>&)>& f) {
  const int n = g.num_vertices;
  std::vector<std::vector<const Edge*>> out(n);
  for (const Edge& e : g.edges)
    if (!g.is_sink_loop(e)) out[e.tail].push_back(&e);
  std::vector<bool> on_path(n, false);
  std::vector<int> path;
  for (int s = 0; s < n; ++s) {
    std::function<void(int)> dfs = [&](int v) {
      for (const Edge* e : out[v]) {
        if (e->head < s) continue;
        if (e->head == s) {
          path.push_back(e->id);
          f(path);
          path.pop_back();
        } else if (!on_path[e->head]) {
          on_path[e->head] = true;
          path.push_back(e->id);
          dfs(e->head);
          path.pop_back();
          on_path[e->head] = false;
        }
      }
    };
    on_path[s] = true;
    dfs(s);
    on_path[s] = false;
  }
}

// Calls f(edge ids) for every simple path from v to the sink.
inline void for_each_sink_path(const EdgeSubgraph& g, int v,
                               const std::function<void(const std::vector<int>&)>& f) {
  const int n = g.num_vertices;
  if (!g.sink) return;
  std::vector<std::vector<const Edge*>> out(n);
  for (const Edge& e : g.edges)
    if (!g.is_sink_loop(e)) out[e.tail].push_back(&e);
  std::vector<bool> on_path(n, false);
  std::vector<int> path;
  std::function<void(int)> dfs = [&](int u) {
    if (u == *g.sink) {
      f(path);
      return;
    }
    for (const Edge* e : out[u]) {
      if (on_path[e->head]) continue;
      on_path[e->head] = true;
      path.push_back(e->id);
      dfs(e->head);
      path.pop_back();
      on_path[e->head] = false;
    }
  };
  on_path[v] = true;
  dfs(v);
}

struct NondegeneracyReport {
  bool zero_cycle_free = true;
  bool path_weights_distinct = true;
  std::vector<int> zero_cycle;                  // a witness, if any
  std::pair<std::vector<int>, std::vector<int>> tied_paths;  // a witness, if any
  bool ok() const { return zero_cycle_free && path_weights_distinct; }
};

inline constexpr int kDefaultNondegeneracyVertexLimit = 10;

// Both clauses of the nondegeneracy definition by exhaustive enumeration of
// simple cycles and simple sink paths. Throws beyond the vertex limit.
inline NondegeneracyReport check_nondegenerate(const Arena& a,
                                               int vertex_limit = kDefaultNondegeneracyVertexLimit) {
  if (a.num_vertices() > vertex_limit)
    throw PreconditionError("nondegeneracy check limited to " + std::to_string(vertex_limit) +
                            " vertices");
  NondegeneracyReport r;
  const EdgeSubgraph g = full_subgraph(a);
  for_each_simple_cycle(g, [&](const std::vector<int>& c) {
    if (!r.zero_cycle_free) return;
    BigInt w = 0;
    for (int e : c) w += a.edge(e).weight;
    if (w == 0) {
      r.zero_cycle_free = false;
      r.zero_cycle = c;
    }
  });
  if (!a.sink()) return r;
  for (int v = 0; v < a.num_vertices() && r.path_weights_distinct; ++v) {
    if (a.is_sink(v)) continue;
    std::map<BigInt, std::vector<std::vector<int>>> by_weight;
    for_each_sink_path(g, v, [&](const std::vector<int>& p) {
      BigInt w = 0;
      for (int e : p) w += a.edge(e).weight;
      by_weight[w].push_back(p);
    });
    for (const auto& [w, paths] : by_weight) {
      for (std::size_t i = 0; i < paths.size() && r.path_weights_distinct; ++i)
        for (std::size_t j = i + 1; j < paths.size(); ++j) {
          EdgeSubgraph u{a.num_vertices(), {}, std::nullopt};
          std::vector<int> ids = paths[i];
          ids.insert(ids.end(), paths[j].begin(), paths[j].end());
          std::sort(ids.begin(), ids.end());
          ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
          for (int e : ids) u.edges.push_back(a.edge(e));
          bool cyclic = false;
          for_each_simple_cycle(u, [&](const std::vector<int>&) { cyclic = true; });
          if (!cyclic) {
            r.path_weights_distinct = false;
            r.tied_paths = {paths[i], paths[j]};
            break;
          }
        }
      if (!r.path_weights_distinct) break;
    }
  }
  return r;
}

}  // namespace lsplp

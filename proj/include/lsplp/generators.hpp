#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lsplp/arena.hpp"
#include "lsplp/reduce.hpp"
#include "lsplp/walks.hpp"

namespace lsplp {

struct RandomGameParams {
  int max_vertices = 8;  // non-sink vertices
  int weight_lo = -8;
  int weight_hi = 8;
  // Give every Max vertex a 0-weight edge into the sink next to one other
  // edge. Without it Max vertices get one or two ordinary edges.
  bool retreat_edges = true;
  bool perturb = true;
  // Reject games that are not LSPs in the full sense: both admissibility
  // conditions, a positive Min-only subgraph, and the sink reachable from
  // every vertex under every admissible strategy.
  bool require_conditions = true;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform-enough integer in [lo, hi]; written out so streams do not depend
// on the standard library's distribution implementation.
inline int draw(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline bool sink_reachable_everywhere(const EdgeSubgraph& g) {
  std::vector<bool> reach(g.num_vertices, false);
  reach[*g.sink] = true;
  for (bool grew = true; grew;) {
    grew = false;
    for (const Edge& e : g.edges)
      if (reach[e.head] && !reach[e.tail]) reach[e.tail] = grew = true;
  }
  for (bool r : reach)
    if (!r) return false;
  return true;
}

inline bool satisfies_conditions(const Arena& a) {
  if (!cycles_all_positive(min_subgraph(a))) return false;
  bool any_admissible = false;
  for (const Strategy& s : enumerate_strategies(a)) {
    const EdgeSubgraph g = restrict_to_strategy(a, s);
    if (!cycles_all_positive(g)) continue;
    any_admissible = true;
    if (!sink_reachable_everywhere(g)) return false;
  }
  return any_admissible && check_min_admissible(a) == ConditionStatus::Holds;
}

inline Arena draw_lsp(std::mt19937_64& rng, const RandomGameParams& p) {
  const int n = draw(rng, 1, p.max_vertices);
  const int sink = n;
  std::vector<Owner> owners(n + 1, Owner::Max);
  for (int v = 0; v < n; ++v) owners[v] = draw(rng, 0, 1) ? Owner::Max : Owner::Min;
  std::vector<Edge> edges;
  auto add = [&](int tail, int head, BigInt w) {
    edges.push_back({static_cast<int>(edges.size()), tail, head, std::move(w)});
  };
  auto weight = [&] { return BigInt(draw(rng, p.weight_lo, p.weight_hi)); };
  for (int v = 0; v < n; ++v) {
    if (owners[v] == Owner::Max && p.retreat_edges) {
      add(v, draw(rng, 0, n - 1), weight());
      add(v, sink, BigInt(0));
      continue;
    }
    const int h1 = draw(rng, 0, n);
    add(v, h1, weight());
    if (draw(rng, 0, 1)) {
      const int h2 = draw(rng, 0, n);
      if (h2 != h1) add(v, h2, weight());
    }
  }
  add(sink, sink, BigInt(0));
  Arena a(ArenaKind::Lsp, std::move(owners), std::move(edges), sink);
  return p.perturb ? perturb_mpg(a) : a;
}

}  // namespace detail

// One random LSP, a pure function of (seed, params). Vertex n is the sink;
// there are no parallel edges, so perturbation makes the game nondegenerate.
inline Arena random_lsp(std::uint64_t seed, const RandomGameParams& p = {}) {
  std::mt19937_64 rng(detail::splitmix64(seed));
  for (;;) {
    Arena a = detail::draw_lsp(rng, p);
    if (!p.require_conditions || detail::satisfies_conditions(a)) return a;
  }
}

// Deterministic stream: instance i depends only on (seed, i).
inline std::vector<Arena> random_instances(std::uint64_t seed, std::size_t count,
                                           const RandomGameParams& p = {}) {
  std::vector<Arena> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(random_lsp(detail::splitmix64(seed) ^ detail::splitmix64(i + 1), p));
  return out;
}

// Random mean payoff game with one or two successors per vertex and no
// parallel edges.
inline Arena random_mpg(std::uint64_t seed, int max_vertices = 8, int weight_lo = -8,
                        int weight_hi = 8) {
  std::mt19937_64 rng(detail::splitmix64(seed));
  const int n = detail::draw(rng, 1, max_vertices);
  std::vector<Owner> owners(n);
  for (auto& o : owners) o = detail::draw(rng, 0, 1) ? Owner::Max : Owner::Min;
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) {
    const int h1 = detail::draw(rng, 0, n - 1);
    edges.push_back({static_cast<int>(edges.size()), v, h1, BigInt(detail::draw(rng, weight_lo, weight_hi))});
    const int h2 = detail::draw(rng, 0, n - 1);
    if (detail::draw(rng, 0, 1) && h2 != h1)
      edges.push_back({static_cast<int>(edges.size()), v, h2, BigInt(detail::draw(rng, weight_lo, weight_hi))});
  }
  return Arena(ArenaKind::Mpg, std::move(owners), std::move(edges), std::nullopt);
}

}  // namespace lsplp

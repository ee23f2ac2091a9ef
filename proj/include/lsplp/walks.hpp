#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "lsplp/arena.hpp"
#include "lsplp/linear_solve.hpp"
#include "lsplp/matrix.hpp"
#include "lsplp/rational_function.hpp"

namespace lsplp {

// Strongly connected components, each listed as vertex ids. Tarjan.
inline std::vector<std::vector<int>> strongly_connected_components(
    int n, const std::vector<std::vector<int>>& succ) {
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<std::vector<int>> comps;
  int counter = 0;
  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int w : succ[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> comp;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      comps.push_back(std::move(comp));
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  return comps;
}

// Minimum mean weight over all cycles of g (the sink loop does not count),
// or nullopt when g is acyclic. Karp's algorithm per strongly connected
// component, in exact rational arithmetic.
inline std::optional<BigRational> minimum_cycle_mean(const EdgeSubgraph& g) {
  const int n = g.num_vertices;
  std::vector<std::vector<int>> succ(n);
  std::vector<const Edge*> edges;
  for (const Edge& e : g.edges) {
    if (g.is_sink_loop(e)) continue;
    succ[e.tail].push_back(e.head);
    edges.push_back(&e);
  }
  std::optional<BigRational> best;
  std::vector<int> comp_of(n, -1);
  const auto comps = strongly_connected_components(n, succ);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c]) comp_of[v] = static_cast<int>(c);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& comp = comps[c];
    std::vector<const Edge*> inner;
    for (const Edge* e : edges)
      if (comp_of[e->tail] == static_cast<int>(c) && comp_of[e->head] == static_cast<int>(c))
        inner.push_back(e);
    if (inner.empty()) continue;
    const std::size_t k = comp.size();
    std::map<int, std::size_t> local;
    for (std::size_t i = 0; i < k; ++i) local[comp[i]] = i;
    // dist[j][v]: minimum weight of a walk with exactly j edges from comp[0].
    std::vector<std::vector<std::optional<BigInt>>> dist(
        k + 1, std::vector<std::optional<BigInt>>(k));
    dist[0][0] = BigInt(0);
    for (std::size_t j = 1; j <= k; ++j)
      for (const Edge* e : inner) {
        const auto& from = dist[j - 1][local[e->tail]];
        if (!from) continue;
        BigInt cand = *from + e->weight;
        auto& to = dist[j][local[e->head]];
        if (!to || cand < *to) to = cand;
      }
    for (std::size_t v = 0; v < k; ++v) {
      if (!dist[k][v]) continue;
      std::optional<BigRational> worst;
      for (std::size_t j = 0; j < k; ++j) {
        if (!dist[j][v]) continue;
        BigRational q(*dist[k][v] - *dist[j][v], BigInt(static_cast<long>(k - j)));
        q.canonicalize();
        if (!worst || q > *worst) worst = q;
      }
      if (worst && (!best || *worst < *best)) best = worst;
    }
  }
  return best;
}

// True iff every cycle of g other than the sink loop has positive weight.
inline bool cycles_all_positive(const EdgeSubgraph& g) {
  const auto mu = minimum_cycle_mean(g);
  return !mu || *mu > 0;
}

// Condition 2 of the game definition for this strategy.
inline bool is_admissible(const Arena& a, const Strategy& s) {
  return cycles_all_positive(restrict_to_strategy(a, s));
}

enum class WalkContext { MinOnly, UnderStrategy };

// Generating functions sum_m a_m(i, j) t^{-m} of walks by weight.
struct WalkMatrix {
  Matrix<RationalFunction> entries;
  WalkContext context = WalkContext::MinOnly;
  std::optional<Strategy> strategy;

  const RationalFunction& operator()(int i, int j) const {
    return entries(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
};

// Matrix with entry (i, k) = sum over edges (i, k) of t^{-w}.
inline Matrix<RationalFunction> transfer_matrix(const EdgeSubgraph& g) {
  const auto n = static_cast<std::size_t>(g.num_vertices);
  Matrix<RationalFunction> m(n, n);
  for (const Edge& e : g.edges) {
    if (g.is_sink_loop(e)) continue;
    m(e.tail, e.head) += RationalFunction::walk_term(e.weight);
  }
  return m;
}

// (I - M)^{-1}: all walk generating functions of g at once.
inline Matrix<RationalFunction> walk_generating_matrix(const EdgeSubgraph& g) {
  Matrix<RationalFunction> m = transfer_matrix(g);
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = (i == j ? RationalFunction(1) : RationalFunction(0)) - m(i, j);
  return invert(m);
}

// minwalks over (V, E_min). Requires every Min-only cycle to be positive;
// otherwise the walk series diverge.
inline WalkMatrix minwalks_matrix(const Arena& a) {
  const EdgeSubgraph g = min_subgraph(a);
  if (!cycles_all_positive(g))
    throw PreconditionError("Min-only subgraph has a nonpositive cycle; minwalks diverges");
  return {walk_generating_matrix(g), WalkContext::MinOnly, std::nullopt};
}

// walks^sigma over G_sigma with the sink loop excluded, so walks_{TT} = 1.
inline WalkMatrix walks_matrix(const Arena& a, const Strategy& s) {
  const EdgeSubgraph g = restrict_to_strategy(a, s);
  if (!cycles_all_positive(g))
    throw PreconditionError("inadmissible strategy: G_sigma has a nonpositive cycle");
  return {walk_generating_matrix(g), WalkContext::UnderStrategy, s};
}

struct WalkCount {
  BigInt weight;
  BigInt count;
  bool operator==(const WalkCount&) const = default;
};

// The k smallest weights m with a_m(i, j) > 0 together with a_m(i, j),
// counted directly on the graph without any matrix algebra.
//
// Weights are shifted by Johnson potentials so that every edge becomes
// nonnegative; zero-weight edges then form a DAG because all cycles are
// positive. Walk counts are swept bucket by bucket in increasing weight.
inline std::vector<WalkCount> walk_count_oracle(const EdgeSubgraph& g, int i, int j,
                                                std::size_t k) {
  if (!cycles_all_positive(g))
    throw PreconditionError("walk_count_oracle: nonpositive cycle, counts are infinite");
  const int n = g.num_vertices;
  std::vector<const Edge*> edges;
  for (const Edge& e : g.edges)
    if (!g.is_sink_loop(e)) edges.push_back(&e);
  // Potentials: shortest distance from a virtual source joined to all vertices.
  std::vector<BigInt> h(n, 0);
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (const Edge* e : edges)
      if (h[e->tail] + e->weight < h[e->head]) {
        h[e->head] = h[e->tail] + e->weight;
        changed = true;
      }
    if (!changed) break;
  }
  std::vector<bool> reaches(n, false);
  reaches[j] = true;
  for (bool grew = true; grew;) {
    grew = false;
    for (const Edge* e : edges)
      if (reaches[e->head] && !reaches[e->tail]) reaches[e->tail] = grew = true;
  }
  std::vector<WalkCount> out;
  if (k == 0 || !reaches[i]) return out;

  std::vector<std::vector<const Edge*>> zero_out(n), pos_out(n);
  std::vector<BigInt> reduced(g.edges.size());
  for (const Edge* e : edges) {
    if (!reaches[e->tail] || !reaches[e->head]) continue;
    const BigInt r = e->weight + h[e->tail] - h[e->head];
    (r == 0 ? zero_out : pos_out)[e->tail].push_back(e);
  }
  // Topological order of the zero-weight DAG.
  std::vector<int> indeg(n, 0), order;
  for (int v = 0; v < n; ++v)
    for (const Edge* e : zero_out[v]) ++indeg[e->head];
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) order.push_back(v);
  for (std::size_t q = 0; q < order.size(); ++q)
    for (const Edge* e : zero_out[order[q]])
      if (--indeg[e->head] == 0) order.push_back(e->head);
  if (static_cast<int>(order.size()) != n) throw InternalError("zero-weight cycle after reweighting");

  std::map<BigInt, std::vector<BigInt>> buckets;
  buckets[0] = std::vector<BigInt>(n, 0);
  buckets[0][i] = 1;
  std::size_t processed = 0;
  while (!buckets.empty() && out.size() < k) {
    if (++processed > 50'000'000) throw Error("walk_count_oracle: bucket limit reached");
    auto node = buckets.extract(buckets.begin());
    const BigInt r = node.key();
    std::vector<BigInt>& c = node.mapped();
    for (int v : order)
      if (c[v] != 0)
        for (const Edge* e : zero_out[v]) c[e->head] += c[v];
    if (c[j] != 0) out.push_back({r - h[i] + h[j], c[j]});
    for (int v = 0; v < n; ++v) {
      if (c[v] == 0) continue;
      for (const Edge* e : pos_out[v]) {
        const BigInt nr = r + e->weight + h[e->tail] - h[e->head];
        auto [it, inserted] = buckets.try_emplace(nr);
        if (inserted) it->second.assign(n, 0);
        it->second[e->head] += c[v];
      }
    }
  }
  return out;
}

}  // namespace lsplp

#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "lsplp/arena.hpp"

namespace lsplp::testing {

// Max vertex a (0) with parallel edges e1 = (a, T, 1), e2 = (a, T, 5); sink 1.
inline Arena g1() {
  return parse_arena(
      "lsp 2 3\n"
      "v 0 max\nv 1 max sink\n"
      "e 0 0 1 1\ne 1 0 1 5\ne 2 1 1 0\n");
}

// Max a (0): e1 = (a, T, 2), e2 = (a, m, 0). Min m (1): (m, T, 5), (m, a, mw).
// Sink 2.
inline Arena g2(long mw = 4) {
  return parse_arena(
      "lsp 3 5\n"
      "v 0 max\nv 1 min\nv 2 max sink\n"
      "e 0 0 2 2\ne 1 0 1 0\ne 2 1 2 5\ne 3 1 0 " + std::to_string(mw) + "\ne 4 2 2 0\n");
}

// Strategy from a list of chosen edge ids.
inline Strategy choose(const Arena& a, std::initializer_list<int> edges) {
  std::vector<int> c(a.num_vertices(), -1);
  for (int e : edges) c[a.edge(e).tail] = e;
  Strategy s(std::move(c));
  validate_strategy(a, s);
  return s;
}

}  // namespace lsplp::testing

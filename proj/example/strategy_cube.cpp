// The admissible strategies of a random two-choice game as a subset of the
// hypercube, and a shortest switch path between two of them.

#include <cstdlib>
#include <iostream>

#include "lsplp/generators.hpp"
#include "lsplp/lopsided.hpp"

int main(int argc, char** argv) {
  using namespace lsplp;
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 19;
  const Arena a = random_lsp(seed, {.max_vertices = 7});
  std::cout << serialize_arena(a) << '\n';

  const VertexSet b = b_of_game(a);
  std::cout << "d = " << b.dimension() << ", " << b.size() << " admissible of " << b.cube_size()
            << "\nlopsided: " << (is_lopsided(b) ? "yes" : "no")
            << "\nmulti-connected: " << (is_multi_connected(b) ? "yes" : "no") << "\n"
            << b.to_string();

  const std::vector<std::uint32_t> members = b.members();
  const auto coords = cube_coordinates(a);
  const Strategy from = strategy_at(a, coords, members.front());
  const Strategy to = strategy_at(a, coords, members.back());
  if (auto path = isometric_switch_path(a, from, to)) {
    std::cout << "\nswitch path of length " << path->size() - 1 << ":\n";
    for (const Strategy& s : *path) std::cout << serialize_strategy(s) << "--\n";
  }
}

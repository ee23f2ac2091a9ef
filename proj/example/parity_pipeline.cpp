// Parity game -> mean payoff game -> LSP, then a lock-step run on the result.

#include <iostream>

#include "lsplp/verify.hpp"

int main() {
  using namespace lsplp;
  const Arena parity = parse_arena(
      "parity 3 6\n"
      "v 0 max\nv 1 min\nv 2 max\n"
      "e 0 0 1 4\ne 1 0 2 1\ne 2 1 0 2\ne 3 1 2 1\ne 4 2 0 5\ne 5 2 1 3\n");
  const Arena mpg = parity_to_mpg(uniquify_priorities(parity));
  std::cout << "mean payoff game:\n" << serialize_arena(mpg);

  const MpgToLspResult r = mpg_to_lsp(mpg, 0);
  std::cout << "\nLSP:\n" << serialize_arena(r.lsp);
  std::cout << "condition 2: " << to_string(r.report.max_admissible)
            << ", condition 3: " << to_string(r.report.min_admissible) << '\n';
  for (const auto& n : r.report.notes) std::cout << "note: " << n << '\n';

  const Strategy s0 = initial_strategy(r.lsp);
  for (RuleKind k : {RuleKind::LeastIndex, RuleKind::GreatestImprovement, RuleKind::FirstImproving}) {
    const EquivalenceReport rep = lockstep_compare(r.lsp, s0, {k, 0}, {.simplex_rule = std::nullopt,
                                                                       .check_nondegeneracy = true});
    std::cout << to_string(k) << ": " << rep.steps << " switches, "
              << (rep.match ? "match" : "mismatch: " + rep.detail) << '\n';
  }
  std::cout << "optimal strategy:\n" << serialize_strategy(run_si(r.lsp, s0, {}).final_strategy());
}

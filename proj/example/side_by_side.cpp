// Runs strategy improvement and the simplex method on a small LSP and prints
// the two runs next to each other.

#include <iostream>

#include "lsplp/verify.hpp"

int main() {
  using namespace lsplp;
  // a (Max) may stop at the sink for 2 or hand over to m (Min), which either
  // pays 5 into the sink or sends the token back to a for 4.
  const Arena a = parse_arena(
      "lsp 3 5\n"
      "v 0 max\nv 1 min\nv 2 max sink\n"
      "e 0 0 2 2\ne 1 0 1 0\ne 2 1 2 5\ne 3 1 0 4\ne 4 2 2 0\n");
  const Strategy s0 = initial_strategy(a);
  const ImprovementRule rule{RuleKind::GreatestImprovement, 0};

  const SiTrace si = run_si(a, s0, rule);
  const LpModel m = build_lp(a);
  const SimplexTrace lp = run_simplex(m, a, basis_of_strategy(m, s0), rule);

  for (std::size_t k = 0; k < si.steps.size(); ++k) {
    const SiStep& s = si.steps[k];
    const SimplexStep& t = lp.steps[k];
    std::cout << "step " << k << "\n  valuation:";
    for (const BigInt& v : s.valuation.values) std::cout << ' ' << v;
    std::cout << "\n  basis:";
    for (int c : t.basis.columns) std::cout << ' ' << m.column_name(c);
    std::cout << "\n  objective: " << t.objective.reduced() << '\n';
    for (const auto& [col, d] : t.reduced_costs)
      std::cout << "  reduced cost " << m.column_name(col) << ": " << d.reduced()
                << (d.sign_at_infinity() < 0 ? "  (improving)" : "") << '\n';
  }

  const EquivalenceReport rep = lockstep_compare(a, s0, rule);
  std::cout << (rep.match ? "runs coincide" : "runs differ: " + rep.detail) << '\n';
  std::cout << "agreeing t0: " << auto_t0(rep.simplex) << '\n';
}

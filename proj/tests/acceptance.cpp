// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lsplp/generators.hpp"
#include "lsplp/lopsided.hpp"
#include "lsplp/lp.hpp"
#include "lsplp/reduce.hpp"
#include "lsplp/strategy_improvement.hpp"
#include "lsplp/verify.hpp"

using namespace lsplp;

namespace {

struct Outcome {
  bool pass = false;
  std::string summary;
};

const std::vector<ImprovementRule> kRules{{RuleKind::LeastIndex, 0},
                                          {RuleKind::GreatestImprovement, 0},
                                          {RuleKind::RandomEdge, 0x5eed},
                                          {RuleKind::FirstImproving, 0}};

std::vector<InstanceResult> g_lockstep;  // criterion 1 runs, reused by 10

std::vector<Strategy> admissible_strategies(const Arena& a) {
  std::vector<Strategy> out;
  for (const Strategy& s : enumerate_strategies(a))
    if (is_admissible(a, s)) out.push_back(s);
  return out;
}

std::vector<Arena> small_corpus() { return random_instances(2, 200, {.max_vertices = 6}); }

Outcome lockstep() {
  g_lockstep = verify_batch(1, 1000, kRules, {.max_vertices = 8}, true);
  std::size_t runs = 0, match = 0;
  std::string first;
  for (const auto& r : g_lockstep)
    for (const auto& rep : r.reports) {
      ++runs;
      if (rep.match)
        ++match;
      else if (first.empty())
        first = " first mismatch: instance " + rep.instance_id + " rule " +
                std::string(to_string(rep.rule.kind)) + ": " + rep.detail;
    }
  return {runs == 4000 && match == runs, std::to_string(match) + "/" + std::to_string(runs) +
                                             " runs match" + first};
}

Outcome inverse_is_walks() {
  std::size_t bases = 0, bad = 0, oracle_bad = 0;
  for (const Arena& a : small_corpus()) {
    const LpModel m = build_lp(a);
    for (const Strategy& s : admissible_strategies(a)) {
      ++bases;
      const WalkMatrix w = walks_matrix(a, s);
      const Basis B = basis_of_strategy(m, s);
      const Matrix<RationalFunction> inv = basis_inverse(m, B);
      for (std::size_t k = 0; k < B.columns.size(); ++k) {
        const int col = B.columns[k];
        const int i1 = col == m.z_column() ? m.sink_vertex : a.edge(m.column_edge[col]).tail;
        for (std::size_t r = 0; r < m.rows(); ++r)
          if (inv(k, r) != w(m.row_vertex[r], i1)) ++bad;
      }
      if (!check_walks_oracle(restrict_to_strategy(a, s), w.entries, 5)) ++oracle_bad;
    }
  }
  return {bad == 0 && oracle_bad == 0,
          std::to_string(bases) + " strategy bases, " + std::to_string(bad) +
              " inverse entry mismatches, " + std::to_string(oracle_bad) + " walk-count disagreements"};
}

Outcome feasible_iff_admissible() {
  std::size_t done = 0, bad = 0, nonpositive = 0, bases = 0;
  std::uint64_t seed = 3;
  while (done < 100) {
    const Arena a = random_lsp(detail::splitmix64(seed++), {.max_vertices = 8});
    if (a.choice_vertices().size() > 4) continue;
    const FeasibleBases f = enumerate_feasible_bases(build_lp(a), a);
    ++done;
    bases += f.feasible.size();
    bad += !f.check;
    nonpositive += !f.strictly_positive;
  }
  return {bad == 0 && nonpositive == 0,
          std::to_string(done) + " instances, " + std::to_string(bases) + " feasible bases, " +
              std::to_string(bad) + " set mismatches, " + std::to_string(nonpositive) +
              " degenerate BFS"};
}

Outcome reduced_costs() {
  std::size_t triples = 0, sign_bad = 0, form_bad = 0;
  for (const Arena& a : small_corpus()) {
    const LpModel m = build_lp(a);
    for (const Strategy& s : admissible_strategies(a)) {
      const WalkMatrix w = walks_matrix(a, s);
      const Tableau t = make_tableau(m, basis_of_strategy(m, s));
      const auto imp = improving_edges(a, s, valuation(a, s));
      for (int col = 0; col < m.z_column(); ++col) {
        if (t.basis.contains(col)) continue;
        const int e = m.column_edge[col];
        ++triples;
        const RationalFunction d = reduced_cost(m, a, w, s, e);
        if (d != reduced_cost_tableau(m, t, col)) ++form_bad;
        if ((d.sign_at_infinity() < 0) != std::binary_search(imp.begin(), imp.end(), e)) ++sign_bad;
      }
    }
  }
  return {sign_bad == 0 && form_bad == 0,
          std::to_string(triples) + " triples, " + std::to_string(sign_bad) +
              " sign disagreements, " + std::to_string(form_bad) + " closed-form mismatches"};
}

Outcome interpretation() {
  std::size_t checks = 0, bad = 0;
  for (const Arena& a : small_corpus())
    for (BChoice bc : {BChoice::AllOnes, BChoice::MinwalksSums}) {
      const LpModel m = build_lp(a, bc);
      for (const Strategy& s : admissible_strategies(a)) {
        const WalkMatrix w = walks_matrix(a, s);
        const Tableau t = make_tableau(m, basis_of_strategy(m, s));
        const BfsValues v = bfs_values(m, a, w, s);
        for (const auto& [e, x] : v.x) {
          ++checks;
          const auto it = std::find(t.basis.columns.begin(), t.basis.columns.end(), m.edge_column[e]);
          if (it == t.basis.columns.end() || t.x_B[it - t.basis.columns.begin()] != x) ++bad;
        }
        ++checks;
        if (t.objective != v.z) ++bad;
        for (int col = 0; col < m.z_column(); ++col) {
          if (t.basis.contains(col)) continue;
          const auto column = tableau_column(m, t, col);
          for (std::size_t k = 0; k < t.basis.columns.size(); ++k) {
            const int bc_col = t.basis.columns[k];
            const int i = bc_col == m.z_column() ? m.sink_vertex : a.edge(m.column_edge[bc_col]).tail;
            ++checks;
            if (tableau_entry(m, a, w, s, i, m.column_edge[col]) != column[k]) ++bad;
          }
        }
      }
    }
  return {bad == 0, std::to_string(checks) + " closed-form values, " + std::to_string(bad) + " mismatches"};
}

Outcome perturbation() {
  std::size_t cycles = 0, zero = 0, flipped = 0, clause = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Arena mpg = random_mpg(detail::splitmix64(600 + i), 8);
    const Arena pert = perturb_mpg(mpg);
    for_each_simple_cycle(full_subgraph(mpg), [&](const std::vector<int>& c) {
      BigInt w0 = 0, w1 = 0;
      for (int e : c) {
        w0 += mpg.edge(e).weight;
        w1 += pert.edge(e).weight;
      }
      ++cycles;
      if (w1 == 0) ++zero;
      if (w0 != 0 && sgn(w0) != sgn(w1)) ++flipped;
    });
    if (!check_nondegenerate(perturb_mpg(add_retreat_sink(mpg, 0))).ok()) ++clause;
  }
  return {zero == 0 && flipped == 0 && clause == 0,
          "200 games, " + std::to_string(cycles) + " cycles, " + std::to_string(zero) +
              " zero, " + std::to_string(flipped) + " sign changes, " + std::to_string(clause) +
              " path-clause failures"};
}

std::vector<Arena> lopsided_corpus() { return random_instances(7, 500, {.max_vertices = 8}); }

Outcome strategy_sets() {
  std::size_t lop = 0, mc = 0, max_d = 0;
  for (const Arena& a : lopsided_corpus()) {
    const VertexSet b = b_of_game(a);
    max_d = std::max<std::size_t>(max_d, b.dimension());
    lop += is_lopsided(b);
    mc += is_multi_connected(b);
  }
  return {lop == 500 && mc == 500 && max_d <= 8,
          std::to_string(lop) + "/500 lopsided, " + std::to_string(mc) +
              "/500 multi-connected, max d " + std::to_string(max_d)};
}

Outcome enumeration() {
  const auto start = std::chrono::steady_clock::now();
  std::size_t mc_lop_bad = 0, lop_mc_found = 0;
  std::string census;
  for (int d = 1; d <= 4; ++d) {
    const auto a = exhaustive_implication(d, ImplicationDirection::MCImpliesLopsided);
    const auto b = exhaustive_implication(d, ImplicationDirection::LopsidedImpliesMC);
    mc_lop_bad += a.counterexamples.size();
    lop_mc_found += b.counterexamples.size();
    census += " d" + std::to_string(d) + ":" + std::to_string(a.lopsided) + "L/" +
              std::to_string(a.multi_connected) + "MC";
  }
  const double minutes =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / 60;
  std::size_t antipodal_bad = 0;
  for (int d = 2; d <= 6; ++d) {
    const VertexSet c = deleted_antipodal_set(d);
    antipodal_bad += is_lopsided(c) || is_multi_connected(c);
  }
  char time[32];
  std::snprintf(time, sizeof time, "%.2f", minutes);
  return {mc_lop_bad == 0 && antipodal_bad == 0 && minutes < 30,
          std::to_string(mc_lop_bad) + " MC=>lopsided counterexamples, " +
              std::to_string(lop_mc_found) + " lopsided=>MC counterexamples found," + census +
              ", antipodal sets passing a test: " + std::to_string(antipodal_bad) + ", " + time + " min"};
}

Outcome isometric_paths() {
  std::mt19937_64 rng(9);
  std::size_t pairs = 0, good = 0;
  for (const Arena& a : lopsided_corpus()) {
    if (pairs == 200) break;
    const auto adm = admissible_strategies(a);
    if (adm.size() < 2) continue;
    const Strategy& s1 = adm[rng() % adm.size()];
    const Strategy& s2 = adm[rng() % adm.size()];
    if (s1 == s2) continue;
    ++pairs;
    std::size_t k = 0;
    for (int v = 0; v < a.num_vertices(); ++v) k += s1.choice(v) != s2.choice(v);
    const auto path = isometric_switch_path(a, s1, s2);
    if (!path || path->size() != k + 1) continue;
    bool ok = true;
    for (const Strategy& s : *path) ok = ok && is_admissible(a, s);
    good += ok;
  }
  return {pairs == 200 && good == pairs,
          std::to_string(good) + "/" + std::to_string(pairs) + " pairs with a Hamming-length path"};
}

Outcome concrete_t() {
  std::size_t traces = 0, good = 0, decisions = 0;
  BigInt largest = 0;
  for (const auto& r : g_lockstep)
    for (std::size_t k = 0; k < r.reports.size(); ++k) {
      ++traces;
      const auto& t0 = r.t0[k];
      decisions += r.reports[k].simplex.decisions.size();
      if (!t0) continue;
      largest = std::max(largest, *t0);
      bool ok = false;
      try {
        ok = concrete_t_crosscheck(r.reports[k].simplex, *t0);
      } catch (const DivisionByZeroError&) {
      }
      good += ok;
    }
  return {traces == 4000 && good == traces,
          std::to_string(good) + "/" + std::to_string(traces) + " traces agree at the selected t0 (" +
              std::to_string(decisions) + " sign decisions, largest t0 " + largest.get_str() + ")"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"lock-step equivalence", lockstep},
      {"basis inverse equals walks", inverse_is_walks},
      {"feasible bases are admissible strategies", feasible_iff_admissible},
      {"reduced cost sign marks improving edges", reduced_costs},
      {"interpretation closed forms", interpretation},
      {"perturbation", perturbation},
      {"strategy sets lopsided and multi-connected", strategy_sets},
      {"exhaustive cube enumeration", enumeration},
      {"isometric switch paths", isometric_paths},
      {"concrete t cross-check", concrete_t},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.summary.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

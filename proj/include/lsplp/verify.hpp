#pragma once

#include <algorithm>
#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "lsplp/arena.hpp"
#include "lsplp/generators.hpp"
#include "lsplp/lp.hpp"
#include "lsplp/reduce.hpp"
#include "lsplp/strategy_improvement.hpp"
#include "lsplp/walks.hpp"

namespace lsplp {

struct LockstepRecord {
  Strategy strategy;
  Basis basis;
  std::vector<int> improving;
  std::vector<int> negative;
  std::optional<int> switched;
  std::optional<int> entering;  // as edge id
  std::optional<int> leaving;   // as edge id
};

struct EquivalenceReport {
  std::string instance_id;
  ImprovementRule rule;
  std::size_t steps = 0;  // switches made by strategy improvement
  std::vector<LockstepRecord> records;
  bool match = false;
  std::optional<std::size_t> mismatch_step;
  std::string detail;
  SimplexTrace simplex;
};

struct LockstepOptions {
  // Rule handed to the simplex side; defaults to the strategy improvement
  // rule. Only negative controls set this.
  std::optional<ImprovementRule> simplex_rule;
  bool check_nondegeneracy = false;
  BChoice b_choice = BChoice::AllOnes;
};

// Runs strategy improvement and the simplex method side by side and checks
// that every step agrees: basis = strategy basis, improving edges = columns
// with negative reduced cost, switched edge = entering column, leaving column
// = old choice at the switched vertex.
inline EquivalenceReport lockstep_compare(const Arena& a, const Strategy& s0, ImprovementRule rule,
                                          const LockstepOptions& opt = {},
                                          std::string instance_id = "") {
  if (opt.check_nondegeneracy && !check_nondegenerate(a).ok())
    throw PreconditionError("game is degenerate");
  if (!is_admissible(a, s0)) throw PreconditionError("initial strategy is not admissible");
  EquivalenceReport rep;
  rep.instance_id = std::move(instance_id);
  rep.rule = rule;
  const SiTrace si = run_si(a, s0, rule);
  rep.steps = si.switches();
  const LpModel m = build_lp(a, opt.b_choice);
  try {
    rep.simplex = run_simplex(m, a, basis_of_strategy(m, s0), opt.simplex_rule.value_or(rule));
  } catch (const Error& e) {
    rep.mismatch_step = 0;
    rep.detail = std::string("simplex failed: ") + e.what();
    return rep;
  }
  const auto& lp = rep.simplex.steps;
  auto fail = [&](std::size_t k, std::string why) {
    rep.match = false;
    rep.mismatch_step = k;
    rep.detail = std::move(why);
    return rep;
  };
  const std::size_t common = std::min(si.steps.size(), lp.size());
  for (std::size_t k = 0; k < common; ++k) {
    const SiStep& a_step = si.steps[k];
    const SimplexStep& b_step = lp[k];
    LockstepRecord r{a_step.strategy, b_step.basis, a_step.improving, b_step.negative,
                     a_step.switched, std::nullopt, std::nullopt};
    if (b_step.entering) r.entering = m.column_edge[*b_step.entering];
    if (b_step.leaving) r.leaving = m.column_edge[*b_step.leaving];
    rep.records.push_back(r);
    if (b_step.basis != basis_of_strategy(m, a_step.strategy))
      return fail(k, "basis differs from the strategy basis");
    if (a_step.improving != b_step.negative)
      return fail(k, "improving edges differ from negative reduced costs");
    if (a_step.switched != r.entering) return fail(k, "switched edge differs from entering column");
    if (a_step.switched) {
      const int old = a_step.strategy.choice(a.edge(*a_step.switched).tail);
      if (r.leaving != old) return fail(k, "leaving column is not the old choice");
    }
  }
  if (si.steps.size() != lp.size()) return fail(common, "run lengths differ");
  rep.match = true;
  return rep;
}

// Series of every walks matrix entry against the direct walk count.
inline bool check_walks_oracle(const EdgeSubgraph& g, const Matrix<RationalFunction>& walks,
                               std::size_t k) {
  for (int i = 0; i < g.num_vertices; ++i)
    for (int j = 0; j < g.num_vertices; ++j) {
      const auto series = series_at_infinity(walks(i, j), k);
      const auto oracle = walk_count_oracle(g, i, j, k);
      if (series.size() != oracle.size()) return false;
      for (std::size_t q = 0; q < series.size(); ++q)
        if (series[q].exponent != -oracle[q].weight || series[q].coefficient != oracle[q].count)
          return false;
    }
  return true;
}

inline bool check_walks_oracle(const Arena& a, const Strategy& s, std::size_t k) {
  return check_walks_oracle(restrict_to_strategy(a, s), walks_matrix(a, s).entries, k);
}

struct FeasibleBases {
  std::vector<Basis> feasible;
  bool check = false;             // feasible == strategy bases of admissible strategies
  bool strictly_positive = true;  // every feasible basis has x_B > 0
};

inline constexpr std::uint64_t kDefaultBasisCap = 100'000;

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > (std::uint64_t{1} << 62)) return UINT64_MAX;
  }
  return r;
}

// Solves every column subset of basis size and keeps the nonsingular ones
// with a nonnegative solution.
inline FeasibleBases enumerate_feasible_bases(const LpModel& m, const Arena& a,
                                              std::uint64_t cap = kDefaultBasisCap) {
  const std::size_t rows = m.rows(), cols = m.cols();
  if (binomial(cols, rows) > cap) throw PreconditionError("basis count exceeds cap");
  FeasibleBases out;
  std::vector<int> pick(rows);
  for (std::size_t i = 0; i < rows; ++i) pick[i] = static_cast<int>(i);
  for (;;) {
    const Basis B{pick};
    try {
      const auto x = solve_linear(basis_matrix(m, B), m.b);
      bool feasible = true, positive = true;
      for (const auto& v : x) {
        feasible = feasible && v.sign_at_infinity() >= 0;
        positive = positive && v.sign_at_infinity() > 0;
      }
      if (feasible) {
        out.feasible.push_back(B);
        out.strictly_positive = out.strictly_positive && positive;
      }
    } catch (const SingularMatrixError&) {
    }
    std::size_t i = rows;
    while (i > 0 && pick[i - 1] == static_cast<int>(cols - rows + i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < rows; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::vector<Basis> expected;
  for (const Strategy& s : enumerate_strategies(a))
    if (is_admissible(a, s)) expected.push_back(basis_of_strategy(m, s));
  auto key = [](const Basis& x, const Basis& y) { return x.columns < y.columns; };
  std::sort(expected.begin(), expected.end(), key);
  std::vector<Basis> got = out.feasible;
  std::sort(got.begin(), got.end(), key);
  out.check = got == expected;
  return out;
}

// True iff every recorded sign decision has the same sign at t0. Throws
// DivisionByZeroError when t0 is a denominator root.
inline bool concrete_t_crosscheck(const SimplexTrace& trace, const BigInt& t0) {
  for (const SignDecision& d : trace.decisions)
    if (d.value.sign_at(t0) != d.sign) return false;
  return true;
}

namespace detail {

inline bool agrees_at(const SimplexTrace& trace, const BigInt& t0) {
  try {
    return concrete_t_crosscheck(trace, t0);
  } catch (const DivisionByZeroError&) {
    return false;
  }
}

}  // namespace detail

// Doubling search from 2 until the decisions agree at two consecutive
// candidates; returns the first of the two. Past every value's root bound
// agreement is certain, so the search always ends.
inline BigInt auto_t0(const SimplexTrace& trace) {
  BigInt bound = 2;
  for (const SignDecision& d : trace.decisions) bound = std::max(bound, d.value.sample_bound());
  for (BigInt t0 = 2;; t0 *= 2) {
    if (t0 > bound) return t0;
    if (detail::agrees_at(trace, t0) && detail::agrees_at(trace, 2 * t0)) return t0;
  }
}

struct InstanceResult {
  std::size_t index = 0;
  Arena arena;
  std::vector<EquivalenceReport> reports;  // one per requested rule
  std::vector<std::optional<BigInt>> t0;   // per report, if requested
};

// Lock-step comparison on a seeded batch of random games, spread over
// `jobs` threads. Results are ordered by instance index.
inline std::vector<InstanceResult> verify_batch(std::uint64_t seed, std::size_t count,
                                                const std::vector<ImprovementRule>& rules,
                                                const RandomGameParams& params = {},
                                                bool with_t0 = false, unsigned jobs = 0,
                                                const LockstepOptions& opt = {}) {
  const std::vector<Arena> games = random_instances(seed, count, params);
  std::vector<std::optional<InstanceResult>> slots(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      InstanceResult r{i, games[i], {}, {}};
      const Strategy s0 = initial_strategy(games[i]);
      for (const ImprovementRule& rule : rules) {
        EquivalenceReport rep;
        try {
          rep = lockstep_compare(games[i], s0, rule, opt, std::to_string(i));
        } catch (const Error& e) {
          rep.instance_id = std::to_string(i);
          rep.rule = rule;
          rep.detail = e.what();
        }
        r.t0.push_back(with_t0 && rep.match ? std::optional<BigInt>(auto_t0(rep.simplex))
                                            : std::nullopt);
        r.reports.push_back(std::move(rep));
      }
      slots[i] = std::move(r);
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(count, 1)));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  std::vector<InstanceResult> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace lsplp

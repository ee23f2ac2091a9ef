// Command-line front end. Exit status: 0 success, 1 property violation,
// 2 input or validation error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "json_report.hpp"
#include "lsplp/lopsided.hpp"
#include "lsplp/reduce.hpp"
#include "lsplp/verify.hpp"

namespace {

using namespace lsplp;
using lsplp::cli::Json;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

struct RunConfig {
  std::string input;
  std::string initial;
  std::string json_out;
  std::string rule = "least-index";
  std::uint64_t seed = 0;
  std::string b = "ones";
  std::string t0;
  bool require_nondegenerate = false;
  // verify-equivalence
  std::size_t count = 100;
  int max_vertices = 8;
  unsigned jobs = 0;
  std::string fault_rule;
  // reduce / lopsided
  std::string threshold = "0";
  int d = 0;
  std::string direction = "mc-implies-lopsided";
  bool keep_fixed = false;
};

Arena read_arena(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::vector<std::string> warnings;
  Arena a = parse_arena(in, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  return a;
}

ImprovementRule rule_of(const RunConfig& cfg) { return {parse_rule(cfg.rule), cfg.seed}; }

BChoice b_of(const RunConfig& cfg) {
  if (cfg.b == "ones") return BChoice::AllOnes;
  if (cfg.b == "minwalks") return BChoice::MinwalksSums;
  throw ValidationError("unknown b choice '" + cfg.b + "'");
}

Strategy initial_of(const RunConfig& cfg, const Arena& a) {
  if (cfg.initial.empty()) return initial_strategy(a);
  std::ifstream in(cfg.initial);
  if (!in) throw ValidationError("cannot open " + cfg.initial);
  return parse_strategy(in, a);
}

void require_lsp(const Arena& a) {
  if (a.kind() != ArenaKind::Lsp) throw ValidationError("expected an lsp arena");
}

void check_nondegenerate_if_asked(const RunConfig& cfg, const Arena& a) {
  if (cfg.require_nondegenerate && !check_nondegenerate(a).ok())
    throw PreconditionError("game is degenerate (perturb it first)");
}

void write_json(const RunConfig& cfg, const Json& j) {
  if (cfg.json_out.empty()) return;
  if (cfg.json_out == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(cfg.json_out);
  if (!out) throw ValidationError("cannot write " + cfg.json_out);
  out << j.dump(2) << '\n';
}

int cmd_solve(const RunConfig& cfg) {
  const Arena a = read_arena(cfg.input);
  require_lsp(a);
  check_nondegenerate_if_asked(cfg, a);
  const ImprovementRule rule = rule_of(cfg);
  const SiTrace t = run_si(a, initial_of(cfg, a), rule);
  std::cout << "switches " << t.switches() << '\n' << serialize_strategy(t.final_strategy());
  std::cout << "valuation";
  for (const BigInt& v : t.steps.back().valuation.values) std::cout << ' ' << v.get_str();
  std::cout << '\n';
  write_json(cfg, cli::si_trace_json(t, rule));
  return kOk;
}

int cmd_build_lp(const RunConfig& cfg) {
  const Arena a = read_arena(cfg.input);
  require_lsp(a);
  const LpModel m = build_lp(a, b_of(cfg));
  write_symbolic_lp(std::cout, m);
  if (!cfg.t0.empty()) {
    std::cout << '\n';
    write_numeric_lp(std::cout, instantiate_at(m, BigInt(cfg.t0)));
  }
  return kOk;
}

int cmd_simplex(const RunConfig& cfg) {
  const Arena a = read_arena(cfg.input);
  require_lsp(a);
  check_nondegenerate_if_asked(cfg, a);
  const LpModel m = build_lp(a, b_of(cfg));
  const SimplexTrace t = run_simplex(m, a, basis_of_strategy(m, initial_of(cfg, a)), rule_of(cfg));
  std::cout << "pivots " << t.pivots() << "\nbasis";
  for (int c : t.steps.back().basis.columns) std::cout << ' ' << m.column_name(c);
  std::cout << "\nobjective " << t.steps.back().objective.reduced() << '\n';
  Json j = cli::simplex_trace_json(m, t);
  int status = kOk;
  if (!cfg.t0.empty()) {
    const BigInt t0 = cfg.t0 == "auto" ? auto_t0(t) : BigInt(cfg.t0);
    bool agree = false;
    try {
      agree = concrete_t_crosscheck(t, t0);
    } catch (const DivisionByZeroError&) {
    }
    std::cout << "t0 " << t0.get_str() << (agree ? " agrees" : " disagrees") << '\n';
    j["t0"] = t0.get_str();
    j["t0_agrees"] = agree;
    if (!agree) status = kViolation;
  }
  write_json(cfg, j);
  return status;
}

int cmd_verify(const RunConfig& cfg) {
  const ImprovementRule rule = rule_of(cfg);
  LockstepOptions opt;
  opt.b_choice = b_of(cfg);
  if (!cfg.fault_rule.empty()) opt.simplex_rule = ImprovementRule{parse_rule(cfg.fault_rule), cfg.seed + 1};
  const bool with_t0 = !cfg.t0.empty();
  if (with_t0 && cfg.t0 != "auto") throw ValidationError("verify-equivalence takes --t0 auto");
  RandomGameParams params;
  params.max_vertices = cfg.max_vertices;
  const auto results = verify_batch(cfg.seed, cfg.count, {rule}, params, with_t0, cfg.jobs, opt);
  std::ofstream file;
  std::ostream* reports = nullptr;
  if (cfg.json_out == "-") {
    reports = &std::cout;
  } else if (!cfg.json_out.empty()) {
    file.open(cfg.json_out);
    if (!file) throw ValidationError("cannot write " + cfg.json_out);
    reports = &file;
  }
  std::size_t pass = 0;
  const EquivalenceReport* first_bad = nullptr;
  for (const auto& r : results) {
    const EquivalenceReport& rep = r.reports.front();
    if (reports) *reports << cli::report_json(rep, r.t0.front()).dump() << '\n';
    bool ok = rep.match;
    if (ok && with_t0) {
      try {
        ok = concrete_t_crosscheck(rep.simplex, *r.t0.front());
      } catch (const DivisionByZeroError&) {
        ok = false;
      }
    }
    if (ok)
      ++pass;
    else if (!first_bad)
      first_bad = &rep;
  }
  if (first_bad)
    std::cout << "first divergence: instance " << first_bad->instance_id << " step "
              << (first_bad->mismatch_step ? std::to_string(*first_bad->mismatch_step) : "-") << ": "
              << (first_bad->detail.empty() ? "t0 cross-check disagrees" : first_bad->detail) << '\n';
  std::cout << (first_bad ? "FAIL " : "PASS ") << pass << '/' << results.size() << '\n';
  return first_bad ? kViolation : kOk;
}

int cmd_reduce(const std::string& which, const RunConfig& cfg) {
  const Arena a = read_arena(cfg.input);
  if (which == "parity-to-mpg") {
    write_arena(std::cout, parity_to_mpg(a));
  } else if (which == "sinkparity-to-lsp") {
    write_arena(std::cout, sink_parity_to_lsp(a));
  } else {
    const MpgToLspResult r = mpg_to_lsp(a, BigInt(cfg.threshold));
    std::cerr << "condition 2: " << to_string(r.report.max_admissible) << '\n'
              << "condition 3: " << to_string(r.report.min_admissible) << '\n';
    for (const auto& n : r.report.notes) std::cerr << "note: " << n << '\n';
    write_arena(std::cout, r.lsp);
  }
  return kOk;
}

int cmd_lopsided_check(const RunConfig& cfg) {
  std::ifstream in(cfg.input);
  if (!in) throw ValidationError("cannot open " + cfg.input);
  const VertexSet c = parse_vertex_set(in, cfg.d);
  std::cout << "d " << c.dimension() << "\nsize " << c.size() << "\nlopsided "
            << (is_lopsided(c) ? "yes" : "no") << '\n';
  if (c.dimension() <= kMaxMultiConnectedDimension)
    std::cout << "multi-connected " << (is_multi_connected(c) ? "yes" : "no") << '\n';
  return kOk;
}

int cmd_lopsided_enumerate(const RunConfig& cfg) {
  ImplicationDirection dir;
  if (cfg.direction == "lopsided-implies-mc")
    dir = ImplicationDirection::LopsidedImpliesMC;
  else if (cfg.direction == "mc-implies-lopsided")
    dir = ImplicationDirection::MCImpliesLopsided;
  else
    throw ValidationError("unknown direction '" + cfg.direction + "'");
  const ImplicationCensus c = exhaustive_implication(cfg.d, dir);
  std::cout << "d " << c.d << "\nsubsets " << c.subsets << "\nlopsided " << c.lopsided
            << "\nmulti-connected " << c.multi_connected << "\n" << to_string(dir)
            << " counterexamples " << c.counterexamples.size() << '\n';
  for (const VertexSet& s : c.counterexamples) std::cout << "---\n" << s.to_string();
  // Multi-connected sets are always lopsided, so only that direction can be
  // violated; the converse is an open question and only reported.
  return dir == ImplicationDirection::MCImpliesLopsided && !c.counterexamples.empty() ? kViolation : kOk;
}

int cmd_lopsided_b_of_game(const RunConfig& cfg) {
  const VertexSet b = b_of_game(read_arena(cfg.input), cfg.keep_fixed);
  const bool lop = is_lopsided(b);
  std::cout << "d " << b.dimension() << "\nsize " << b.size() << "\nlopsided " << (lop ? "yes" : "no")
            << '\n';
  bool mc = true;
  if (b.dimension() <= kMaxMultiConnectedDimension) {
    mc = is_multi_connected(b);
    std::cout << "multi-connected " << (mc ? "yes" : "no") << '\n';
  }
  std::cout << "---\n" << b.to_string();
  return lop && mc ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strategy improvement and the simplex method on longest-shortest-path games"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_rule_flags = [&](CLI::App* c) {
    c->add_option("--rule", cfg.rule, "least-index, greatest, random or first");
    c->add_option("--seed", cfg.seed, "seed for the random rule and generators");
  };
  auto add_input = [&](CLI::App* c, const char* what) {
    c->add_option("input", cfg.input, what)->required();
  };

  auto* solve = app.add_subcommand("solve-lsp", "run strategy improvement on an LSP");
  add_input(solve, "arena file");
  add_rule_flags(solve);
  solve->add_option("--initial", cfg.initial, "initial strategy file (default: all retreat)");
  solve->add_option("--json-out", cfg.json_out, "write the trace as JSON ('-' for stdout)");
  solve->add_flag("--require-nondegenerate", cfg.require_nondegenerate);

  auto* build = app.add_subcommand("build-lp", "print the LP of an LSP");
  add_input(build, "arena file");
  build->add_option("--b", cfg.b, "ones or minwalks");
  build->add_option("--t0", cfg.t0, "also print the LP evaluated at t = t0");

  auto* simplex = app.add_subcommand("simplex", "run the simplex method on the LP of an LSP");
  add_input(simplex, "arena file");
  add_rule_flags(simplex);
  simplex->add_option("--initial", cfg.initial, "initial strategy file (default: all retreat)");
  simplex->add_option("--b", cfg.b, "ones or minwalks");
  simplex->add_option("--t0", cfg.t0, "cross-check sign decisions at t0 (auto or a number)");
  simplex->add_option("--json-out", cfg.json_out, "write the trace as JSON ('-' for stdout)");
  simplex->add_flag("--require-nondegenerate", cfg.require_nondegenerate);

  auto* verify = app.add_subcommand("verify-equivalence", "lock-step check on random games");
  add_rule_flags(verify);
  verify->add_option("--count", cfg.count, "number of games");
  verify->add_option("--max-vertices", cfg.max_vertices, "non-sink vertices per game")
      ->check(CLI::Range(1, 12));
  verify->add_option("--b", cfg.b, "ones or minwalks");
  verify->add_option("--t0", cfg.t0, "auto: also cross-check at an automatic t0");
  verify->add_option("--jobs", cfg.jobs, "worker threads (default: all cores)");
  verify->add_option("--json-out", cfg.json_out, "one JSON report per line ('-' for stdout)");
  verify->add_option("--fault-rule", cfg.fault_rule)->group("");  // negative control

  std::string reduce_kind;
  auto* reduce = app.add_subcommand("reduce", "game reductions");
  reduce->add_option("kind", reduce_kind, "parity-to-mpg, sinkparity-to-lsp or mpg-to-lsp")
      ->required()
      ->check(CLI::IsMember({"parity-to-mpg", "sinkparity-to-lsp", "mpg-to-lsp"}));
  add_input(reduce, "arena file");
  reduce->add_option("--threshold", cfg.threshold, "mpg-to-lsp threshold");

  auto* perturb = app.add_subcommand("perturb", "nondegeneracy perturbation of an MPG or LSP");
  add_input(perturb, "arena file");
  auto* uniquify = app.add_subcommand("uniquify", "make parity priorities distinct");
  add_input(uniquify, "arena file");

  auto* lop = app.add_subcommand("lopsided", "hypercube subset tests");
  lop->require_subcommand(1);
  auto* check = lop->add_subcommand("check", "test a set file");
  check->add_option("set-file", cfg.input)->required();
  check->add_option("--d", cfg.d, "dimension of an empty set file");
  auto* enumerate = lop->add_subcommand("enumerate", "exhaustive implication check");
  enumerate->add_option("--d", cfg.d)->required()->check(CLI::Range(0, kMaxExhaustiveDimension));
  enumerate->add_option("--direction", cfg.direction, "mc-implies-lopsided or lopsided-implies-mc");
  auto* bgame = lop->add_subcommand("b-of-game", "strategy set of a game as a cube subset");
  bgame->add_option("input", cfg.input)->required();
  bgame->add_flag("--keep-fixed", cfg.keep_fixed, "give single-choice vertices a coordinate too");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve) return cmd_solve(cfg);
    if (*build) return cmd_build_lp(cfg);
    if (*simplex) return cmd_simplex(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*reduce) return cmd_reduce(reduce_kind, cfg);
    if (*perturb) {
      write_arena(std::cout, perturb_mpg(read_arena(cfg.input)));
      return kOk;
    }
    if (*uniquify) {
      write_arena(std::cout, uniquify_priorities(read_arena(cfg.input)));
      return kOk;
    }
    if (*check) return cmd_lopsided_check(cfg);
    if (*enumerate) return cmd_lopsided_enumerate(cfg);
    if (*bgame) return cmd_lopsided_b_of_game(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {  // malformed big integers
    std::cerr << "error: bad number: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct CliRun {
  int status = -1;
  std::string out;
};

// Runs the CLI with stderr discarded and captures stdout.
CliRun cli(const std::string& args) {
  const std::string cmd = std::string(LSPLP_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  const int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string data(const char* name) { return std::string(LSPLP_DATA_DIR) + "/" + name; }

fs::path scratch(const std::string& name, const std::string& contents) {
  const fs::path dir = fs::temp_directory_path() / "lsplp_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << contents;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, SolveG1) {
  const CliRun r = cli("solve-lsp " + data("g1.lsp") + " --rule least-index --initial " + data("g1_s0.str"));
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("switches 1"), std::string::npos);
  EXPECT_NE(r.out.find("s 0 1"), std::string::npos);
}

TEST(Cli, DegenerateInputRejected) {
  const auto p = scratch("tied.lsp", "lsp 3 5\nv 0 max\nv 1 min\nv 2 max sink\n"
                                     "e 0 0 1 1\ne 1 1 2 1\ne 2 0 2 2\ne 3 1 0 5\ne 4 2 2 0\n");
  EXPECT_EQ(cli("solve-lsp " + p.string() + " --require-nondegenerate").status, 2);
  EXPECT_EQ(cli("solve-lsp " + p.string()).status, 0);
}

TEST(Cli, NoInitialStrategy) {
  // No retreat edges and every strategy closes a nonpositive cycle.
  const auto p = scratch("stuck.lsp", "lsp 3 5\nv 0 max\nv 1 min\nv 2 max sink\n"
                                      "e 0 0 1 -1\ne 1 0 1 -2\ne 2 1 0 0\ne 3 1 2 0\ne 4 2 2 0\n");
  EXPECT_EQ(cli("solve-lsp " + p.string()).status, 2);
}

TEST(Cli, BuildLp) {
  const CliRun sym = cli("build-lp " + data("g1.lsp"));
  EXPECT_EQ(sym.status, 0);
  EXPECT_NE(sym.out.find("row 1: (-1)/(t) (-1)/(t^5) (1)/(1)"), std::string::npos);
  const CliRun num = cli("build-lp " + data("g1.lsp") + " --t0 10");
  EXPECT_NE(num.out.find("row 1: -1/10 -1/100000 1 = 1"), std::string::npos);
  const auto bad = scratch("bad.lsp", "lsp 3 4\nv 0 min\nv 1 min\nv 2 max sink\n"
                                      "e 0 0 1 1\ne 1 1 0 -1\ne 2 1 2 0\ne 3 2 2 0\n");
  EXPECT_EQ(cli("build-lp " + bad.string()).status, 2);
}

TEST(Cli, VerifyEquivalence) {
  const CliRun r = cli("verify-equivalence --seed 1 --count 100 --rule greatest");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("PASS 100/100"), std::string::npos);
  const CliRun zero = cli("verify-equivalence --count 0");
  EXPECT_EQ(zero.status, 0);
  EXPECT_NE(zero.out.find("PASS 0/0"), std::string::npos);
  EXPECT_EQ(cli("verify-equivalence --seed 1 --count 50 --fault-rule random").status, 1);
}

TEST(Cli, VerifyOutputIsDeterministic) {
  const fs::path dir = fs::temp_directory_path() / "lsplp_cli_test";
  fs::create_directories(dir);
  const fs::path a = dir / "a.jsonl", b = dir / "b.jsonl";
  const std::string args = "verify-equivalence --seed 4 --count 20 --rule random --t0 auto --json-out ";
  ASSERT_EQ(cli(args + a.string() + " --jobs 1").status, 0);
  ASSERT_EQ(cli(args + b.string() + " --jobs 4").status, 0);
  const std::string ja = slurp(a);
  EXPECT_FALSE(ja.empty());
  EXPECT_EQ(ja, slurp(b));
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(cli("solve-lsp /nonexistent.lsp").status, 2);
  EXPECT_EQ(cli("solve-lsp " + data("g1.lsp") + " --rule bogus").status, 2);
  EXPECT_EQ(cli("").status, 2);
  const auto p = scratch("garbage.lsp", "lsp 2 2\nv 0 max\nnonsense\n");
  EXPECT_EQ(cli("solve-lsp " + p.string()).status, 2);
}

TEST(Cli, ReduceAndPerturb) {
  const auto par = scratch("p.par", "parity 2 2\nv 0 max\nv 1 min\ne 0 0 1 2\ne 1 1 0 1\n");
  const CliRun r = cli("reduce parity-to-mpg " + par.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("e 0 0 1 4\ne 1 1 0 -2"), std::string::npos);
  const auto mpg = scratch("m.mpg", "mpg 1 1\nv 0 max\ne 0 0 0 1\n");
  const CliRun l = cli("reduce mpg-to-lsp " + mpg.string() + " --threshold 0");
  EXPECT_EQ(l.status, 0);
  EXPECT_NE(l.out.find("v 1 max sink"), std::string::npos);
  EXPECT_EQ(cli("perturb " + data("g2.lsp")).status, 0);
  const auto dup = scratch("dup.par", "parity 3 3\nv 0 max\nv 1 min\nv 2 max\n"
                                      "e 0 0 1 2\ne 1 1 2 2\ne 2 2 0 3\n");
  EXPECT_NE(cli("uniquify " + dup.string()).out.find("e 1 1 2 4"), std::string::npos);
}

TEST(Cli, Lopsided) {
  const auto diag = scratch("diag.set", "-1 +1\n+1 -1\n");
  const CliRun c = cli("lopsided check " + diag.string());
  EXPECT_EQ(c.status, 0);
  EXPECT_NE(c.out.find("lopsided no"), std::string::npos);
  const CliRun e = cli("lopsided enumerate --d 2 --direction mc-implies-lopsided");
  EXPECT_EQ(e.status, 0);
  EXPECT_NE(e.out.find("counterexamples 0"), std::string::npos);
  const CliRun b = cli("lopsided b-of-game " + data("g2.lsp"));
  EXPECT_EQ(b.status, 0);
  EXPECT_NE(b.out.find("---\n-1\n+1\n"), std::string::npos);
  EXPECT_EQ(cli("lopsided enumerate --d 9").status, 2);
}

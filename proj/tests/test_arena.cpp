#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "lsplp/arena.hpp"

using namespace lsplp;
using lsplp::testing::choose;
using lsplp::testing::g1;
using lsplp::testing::g2;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<int> edge_ids(const EdgeSubgraph& g) {
  std::vector<int> ids;
  for (const Edge& e : g.edges) ids.push_back(e.id);
  return ids;
}

}  // namespace

TEST(ParseArena, FixtureG1) {
  Arena a = parse_arena(read_file(LSPLP_DATA_DIR "/g1.lsp"));
  EXPECT_EQ(a.num_vertices(), 2);
  EXPECT_EQ(a.num_edges(), 3);
  EXPECT_EQ(a.sink(), 1);
  EXPECT_EQ(a, g1());
  EXPECT_EQ(parse_arena(serialize_arena(a)), a);
}

TEST(ParseArena, SinkOutDegree) {
  try {
    parse_arena("lsp 2 4\nv 0 max\nv 1 max sink\ne 0 0 1 1\ne 1 0 1 5\ne 2 1 1 0\ne 3 1 0 2\n");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("sink out-degree"), std::string::npos);
  }
}

TEST(ParseArena, NoOutgoingEdge) {
  try {
    parse_arena("lsp 3 3\nv 0 max\nv 1 min\nv 2 max sink\ne 0 0 2 1\ne 1 0 1 5\ne 2 2 2 0\n");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("no outgoing edge"), std::string::npos);
  }
}

TEST(ParseArena, SyntaxErrorCarriesLine) {
  try {
    parse_arena("lsp 2 3\nv 0 max\nv 1 max sink\ne 0 0 1 x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(ParseArena, MinSinkIsReassigned) {
  std::vector<std::string> warnings;
  Arena a = parse_arena("lsp 2 3\nv 0 max\nv 1 min sink\ne 0 0 1 1\ne 1 0 1 5\ne 2 1 1 0\n",
                        &warnings);
  EXPECT_EQ(a.owner(1), Owner::Max);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(ParseArena, BigWeights) {
  Arena a = parse_arena("mpg 1 1\nv 0 min\ne 0 0 0 -123456789012345678901234567890\n");
  EXPECT_EQ(a.edge(0).weight, BigInt("-123456789012345678901234567890"));
}

TEST(RestrictToStrategy, Examples) {
  EXPECT_EQ(edge_ids(restrict_to_strategy(g1(), choose(g1(), {0}))), (std::vector<int>{0, 2}));
  EXPECT_EQ(edge_ids(restrict_to_strategy(g2(), choose(g2(), {1}))),
            (std::vector<int>{1, 2, 3, 4}));
  EXPECT_THROW(validate_strategy(g2(), Strategy({2, -1, -1})), ValidationError);
}

TEST(MinSubgraph, Examples) {
  EXPECT_TRUE(min_subgraph(g1()).edges.empty());
  EXPECT_EQ(edge_ids(min_subgraph(g2())), (std::vector<int>{2, 3}));
  Arena all_max = parse_arena("mpg 2 2\nv 0 max\nv 1 max\ne 0 0 1 1\ne 1 1 0 1\n");
  EXPECT_TRUE(min_subgraph(all_max).edges.empty());
}

TEST(EnumerateStrategies, Examples) {
  EXPECT_EQ(enumerate_strategies(g1()),
            (std::vector<Strategy>{choose(g1(), {0}), choose(g1(), {1})}));
  EXPECT_EQ(enumerate_strategies(g2()),
            (std::vector<Strategy>{choose(g2(), {0}), choose(g2(), {1})}));
  Arena single = parse_arena("lsp 3 3\nv 0 max\nv 1 max\nv 2 max sink\ne 0 0 1 1\ne 1 1 2 1\ne 2 2 2 0\n");
  EXPECT_EQ(enumerate_strategies(single).size(), 1u);
}

TEST(EnumerateStrategies, CapExceeded) {
  EXPECT_THROW(enumerate_strategies(g2(), 1), Error);
}

TEST(ApplySwitch, Examples) {
  EXPECT_EQ(apply_switch(g1(), choose(g1(), {0}), 1), choose(g1(), {1}));
  EXPECT_EQ(apply_switch(g1(), choose(g1(), {0}), 0), choose(g1(), {0}));
  EXPECT_THROW(apply_switch(g2(), choose(g2(), {0}), 2), Error);
}

TEST(StrategyFormat, RoundTrip) {
  Arena a = g2();
  Strategy s = parse_strategy(read_file(LSPLP_DATA_DIR "/g2_s0.str"), a);
  EXPECT_EQ(s, choose(a, {0}));
  EXPECT_EQ(parse_strategy(serialize_strategy(s), a), s);
}

namespace {

Arena random_arena(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nv(2, 7), coin(0, 1), w(-20, 20), deg(1, 3);
  const int n = nv(rng);
  std::vector<Owner> owners(n);
  for (auto& o : owners) o = coin(rng) ? Owner::Max : Owner::Min;
  owners[n - 1] = Owner::Max;
  std::vector<Edge> edges;
  std::uniform_int_distribution<int> head(0, n - 1);
  for (int v = 0; v + 1 < n; ++v)
    for (int k = deg(rng); k > 0; --k)
      edges.push_back({static_cast<int>(edges.size()), v, head(rng), BigInt(w(rng))});
  edges.push_back({static_cast<int>(edges.size()), n - 1, n - 1, BigInt(0)});
  return Arena(ArenaKind::Lsp, owners, edges, n - 1);
}

}  // namespace

TEST(ArenaProperty, SerializeRoundTrip) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Arena a = random_arena(rng);
    EXPECT_EQ(parse_arena(serialize_arena(a)), a);
  }
}

TEST(ArenaProperty, RestrictionDegrees) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    Arena a = random_arena(rng);
    for (const Strategy& s : enumerate_strategies(a)) {
      const auto deg = restrict_to_strategy(a, s).out_degrees();
      for (int v = 0; v < a.num_vertices(); ++v) {
        if (a.is_sink(v) || a.owner(v) == Owner::Max)
          EXPECT_EQ(deg[v], 1);
        else
          EXPECT_EQ(deg[v], static_cast<int>(a.out_edges(v).size()));
      }
    }
  }
}

TEST(ArenaProperty, StrategyCountIsDegreeProduct) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    Arena a = random_arena(rng);
    std::uint64_t expected = 1;
    for (int v : a.choice_vertices()) expected *= a.out_edges(v).size();
    const auto all = enumerate_strategies(a);
    EXPECT_EQ(all.size(), expected);
    EXPECT_EQ(std::set<Strategy>(all.begin(), all.end()).size(), expected);
  }
}

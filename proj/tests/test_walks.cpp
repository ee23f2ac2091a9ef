#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "lsplp/walks.hpp"

using namespace lsplp;
using lsplp::testing::choose;
using lsplp::testing::g1;
using lsplp::testing::g2;
using RF = RationalFunction;

namespace {

constexpr int kA = 0, kM = 1, kTop2 = 2, kTop1 = 1;

// Random small graph with positive cycles only: weights are shifted so the
// minimum cycle mean ends up positive.
EdgeSubgraph random_positive_graph(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> w(-3, 6), head(0, n - 1), deg(1, 2);
  for (;;) {
    EdgeSubgraph g{n, {}, std::nullopt};
    for (int v = 0; v < n; ++v)
      for (int k = deg(rng); k > 0; --k)
        g.edges.push_back({static_cast<int>(g.edges.size()), v, head(rng), BigInt(w(rng))});
    if (cycles_all_positive(g)) return g;
  }
}

}  // namespace

TEST(CyclesAllPositive, Examples) {
  EXPECT_TRUE(cycles_all_positive(min_subgraph(g2())));
  EXPECT_TRUE(cycles_all_positive(restrict_to_strategy(g2(), choose(g2(), {1}))));
  EXPECT_FALSE(cycles_all_positive(restrict_to_strategy(g2(-1), choose(g2(-1), {1}))));
}

TEST(CyclesAllPositive, ZeroCycleIsRejected) {
  EXPECT_FALSE(cycles_all_positive(restrict_to_strategy(g2(0), choose(g2(0), {1}))));
}

TEST(MinimumCycleMean, TwoCycles) {
  // Cycles 0->1->0 (weight 3, mean 3/2) and self-loop at 2 (weight 1).
  EdgeSubgraph g{3, {{0, 0, 1, 1}, {1, 1, 0, 2}, {2, 2, 2, 1}, {3, 1, 2, -7}}, std::nullopt};
  EXPECT_EQ(minimum_cycle_mean(g), BigRational(1));
  g.edges[2].weight = 5;
  EXPECT_EQ(minimum_cycle_mean(g), BigRational(3, 2));
  EdgeSubgraph dag{2, {{0, 0, 1, -4}}, std::nullopt};
  EXPECT_FALSE(minimum_cycle_mean(dag).has_value());
}

TEST(IsAdmissible, Examples) {
  EXPECT_TRUE(is_admissible(g1(), choose(g1(), {0})));
  EXPECT_TRUE(is_admissible(g2(), choose(g2(), {1})));
  EXPECT_FALSE(is_admissible(g2(-1), choose(g2(-1), {1})));
}

TEST(MinwalksMatrix, G2) {
  WalkMatrix mw = minwalks_matrix(g2());
  EXPECT_EQ(mw(kM, kTop2), RF::t_power(-5));
  EXPECT_EQ(mw(kM, kA), RF::t_power(-4));
  EXPECT_EQ(mw(kTop2, kA), RF(0));
  EXPECT_EQ(mw(kA, kA), RF(1));
}

TEST(MinwalksMatrix, G1IsIdentity) {
  EXPECT_EQ(minwalks_matrix(g1()).entries, Matrix<RF>::identity(2, RF(0), RF(1)));
}

TEST(MinwalksMatrix, NonpositiveMinCycleRejected) {
  Arena a = parse_arena("lsp 3 4\nv 0 min\nv 1 min\nv 2 max sink\ne 0 0 1 1\ne 1 1 0 -1\ne 2 1 2 0\ne 3 2 2 0\n");
  EXPECT_THROW(minwalks_matrix(a), PreconditionError);
}

TEST(WalksMatrix, G2Optimal) {
  WalkMatrix w = walks_matrix(g2(), choose(g2(), {1}));
  EXPECT_EQ(w(kA, kTop2), RF(1) / (RF::t_power(5) - RF::t_power(1)));
  EXPECT_EQ(w(kTop2, kTop2), RF(1));
  EXPECT_EQ(w(kTop2, kA), RF(0));
  EXPECT_EQ(w(kTop2, kM), RF(0));
}

TEST(WalksMatrix, G1Initial) {
  WalkMatrix w = walks_matrix(g1(), choose(g1(), {0}));
  EXPECT_EQ(w(kA, kTop1), RF::t_power(-1));
  EXPECT_EQ(w(kTop1, kTop1), RF(1));
}

TEST(WalksMatrix, InadmissibleRejected) {
  EXPECT_THROW(walks_matrix(g2(-1), choose(g2(-1), {1})), PreconditionError);
}

TEST(WalkCountOracle, Examples) {
  auto g2s = restrict_to_strategy(g2(), choose(g2(), {1}));
  EXPECT_EQ(walk_count_oracle(g2s, kA, kTop2, 3),
            (std::vector<WalkCount>{{5, 1}, {9, 1}, {13, 1}}));
  auto g1s = restrict_to_strategy(g1(), choose(g1(), {0}));
  EXPECT_EQ(walk_count_oracle(g1s, kA, kTop1, 1), (std::vector<WalkCount>{{1, 1}}));
  EXPECT_EQ(walk_count_oracle(g2s, kM, kM, 1), (std::vector<WalkCount>{{0, 1}}));
}

TEST(WalkCountOracle, CountsParallelWalks) {
  // Two parallel edges 0->1 of weight 2 and a loop 1->1 of weight 1.
  EdgeSubgraph g{2, {{0, 0, 1, 2}, {1, 0, 1, 2}, {2, 1, 1, 1}}, std::nullopt};
  EXPECT_EQ(walk_count_oracle(g, 0, 1, 3),
            (std::vector<WalkCount>{{2, 2}, {3, 2}, {4, 2}}));
}

TEST(WalkCountOracle, NegativeEdgesReweighted) {
  // 0 -> 1 weight -3, 1 -> 0 weight 4 (cycle weight 1).
  EdgeSubgraph g{2, {{0, 0, 1, -3}, {1, 1, 0, 4}}, std::nullopt};
  EXPECT_EQ(walk_count_oracle(g, 0, 1, 3),
            (std::vector<WalkCount>{{-3, 1}, {-2, 1}, {-1, 1}}));
}

TEST(WalksProperty, SeriesMatchesOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 5;
    EdgeSubgraph g = random_positive_graph(rng, n);
    Matrix<RF> w = walk_generating_matrix(g);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto series = series_at_infinity(w(i, j), 5);
        auto oracle = walk_count_oracle(g, i, j, 5);
        ASSERT_EQ(series.size(), oracle.size()) << "pair " << i << "," << j;
        for (std::size_t k = 0; k < series.size(); ++k) {
          EXPECT_EQ(series[k].exponent, -oracle[k].weight.get_si());
          EXPECT_EQ(series[k].coefficient, BigRational(oracle[k].count));
        }
      }
  }
}

TEST(WalksProperty, InverseRelationAndSigns) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 5;
    EdgeSubgraph g = random_positive_graph(rng, n);
    Matrix<RF> w = walk_generating_matrix(g);
    Matrix<RF> m = transfer_matrix(g);
    Matrix<RF> i_minus_m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) i_minus_m(i, j) = RF(i == j ? 1 : 0) - m(i, j);
    EXPECT_EQ(i_minus_m * w, Matrix<RF>::identity(n, RF(0), RF(1)));
    for (int i = 0; i < n; ++i) {
      EXPECT_GE(w(i, i), RF(1));
      for (int j = 0; j < n; ++j) EXPECT_GE(w(i, j).sign_at_infinity(), 0);
    }
  }
}

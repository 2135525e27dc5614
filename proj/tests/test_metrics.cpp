#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace boba;
using namespace boba::testing;

namespace {

std::uint64_t gscore_oracle(const CooGraph& g, std::span<const vertex_t> order, std::uint32_t w) {
  const auto sets = out_sets(g);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = (i > w ? i - w : 0); j < i; ++j) {
      const vertex_t u = order[i], v = order[j];
      total += shared(sets[u], sets[v]) + sets[u].count(v) + sets[v].count(u);
    }
  return total;
}

double nbr_oracle(const CooGraph& g, std::uint32_t line) {
  std::vector<std::vector<vertex_t>> rows(g.n());
  for (edge_t i = 0; i < g.m(); ++i) rows[g.src()[i]].push_back(g.dst()[i]);
  double sum = 0;
  int count = 0;
  for (const auto& row : rows) {
    if (row.empty()) continue;
    std::set<vertex_t> lines;
    for (const vertex_t u : row) lines.insert(u / line);
    sum += static_cast<double>(lines.size()) / row.size();
    ++count;
  }
  return sum / count;
}

const CooGraph kShared(3, {0, 1}, {2, 2});

}  // namespace

TEST(NScore, Examples) {
  EXPECT_EQ(nscore(CooGraph(3, {0, 1}, {1, 2}), Permutation::identity(3)), 0u);
  EXPECT_EQ(nscore(kShared, Permutation::identity(3)), 1u);
}

TEST(NScore, DuplicatesCollapse) {
  EXPECT_EQ(nscore(CooGraph(2, {0, 0, 1, 1}, {1, 1, 1, 1}), Permutation::identity(2)), 1u);
}

TEST(NScore, ChordedCycleBruteForceMatchesOracle) {
  const CooGraph g(4, {0, 1, 2, 3, 0, 1, 2, 3}, {1, 2, 3, 0, 2, 3, 0, 1});
  const auto best = brute_force_optimal_nscore(g);
  EXPECT_EQ(best.nscore, optimal_nscore_oracle(g));
  EXPECT_EQ(nscore(g, best.ordering), best.nscore);
}

TEST(NScore, FuzzMatchesOracleAndLemmaBound) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto g = random_graph(rng, {.max_n = 50, .max_m = 200});
    const auto p = random_order(g.n(), rng());
    const auto s = nscore(g, p);
    ASSERT_EQ(s, nscore_oracle(g, p.order()));
    ASSERT_LE(s, g.m());
  }
}

TEST(NScore, InvariantUnderRelabeling) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_graph(rng, {.max_n = 40, .max_m = 150});
    const auto p = random_order(g.n(), rng());
    EXPECT_EQ(nscore(g, p), nscore(apply_permutation(g, p), Permutation::identity(g.n())));
  }
}

TEST(NScore, SizeMismatch) {
  EXPECT_THROW(nscore(kShared, Permutation::identity(4)), argument_error);
}

TEST(GScore, Examples) {
  EXPECT_EQ(gscore(CooGraph(5, {}, {}), random_order(5, 1), 1), 0u);
  EXPECT_EQ(gscore(kShared, Permutation::identity(3), 1), 2u);
  EXPECT_THROW(gscore(kShared, Permutation::identity(3), 0), argument_error);
}

TEST(GScore, NoAdjacentPairsEqualsNScore) {
  // Isolated vertex 3 separates the sources from their shared target.
  const CooGraph g(4, {0, 1}, {2, 2});
  const auto p = Permutation::from_order({0, 1, 3, 2});
  EXPECT_EQ(nscore(g, p), 1u);
  EXPECT_EQ(gscore(g, p, 1), nscore(g, p));
}

TEST(GScore, FuzzMatchesOracle) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 500; ++trial) {
    const auto g = random_graph(rng, {.max_n = 30, .max_m = 120});
    const auto p = random_order(g.n(), rng());
    const std::uint32_t w = 1 + static_cast<std::uint32_t>(rng() % 6);
    ASSERT_EQ(gscore(g, p, w), gscore_oracle(g, p.order(), w));
    ASSERT_GE(gscore(g, p, 1), nscore(g, p));
  }
}

TEST(Nbr, Examples) {
  EXPECT_DOUBLE_EQ(nbr(coo_to_csr(kShared), 32), 1.0);
  EXPECT_DOUBLE_EQ(nbr(coo_to_csr(CooGraph(3, {2, 2}, {0, 1})), 32), 0.5);
  EXPECT_DOUBLE_EQ(nbr(coo_to_csr(CooGraph(40, {0, 0}, {31, 32})), 32), 1.0);
}

TEST(Nbr, Errors) {
  EXPECT_THROW(nbr(coo_to_csr(CooGraph(3, {}, {})), 32), undefined_metric_error);
  EXPECT_THROW(nbr(coo_to_csr(kShared), 0), argument_error);
}

TEST(Nbr, FuzzMatchesOracleAndRange) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 500; ++trial) {
    const auto g = random_graph(rng, {.max_n = 200, .max_m = 400});
    if (g.m() == 0) continue;
    const std::uint32_t line = 1 + static_cast<std::uint32_t>(rng() % 40);
    const double v = nbr(coo_to_csr(g), line);
    ASSERT_NEAR(v, nbr_oracle(g, line), 1e-12);
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 1.0);
  }
}

TEST(Nbr, LineSizeOneOnSimpleGraphIsOne) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = erdos_renyi(30, 0.2, rng);
    if (g.m() == 0) continue;
    EXPECT_DOUBLE_EQ(nbr(coo_to_csr(g), 1), 1.0);
  }
}

TEST(Bandwidth, Examples) {
  EXPECT_EQ(bandwidth(CooGraph(3, {0, 1}, {1, 2}), Permutation::identity(3)), 1u);
  EXPECT_EQ(bandwidth(CooGraph(6, {0}, {5}), Permutation::identity(6)), 5u);
  EXPECT_EQ(bandwidth(CooGraph(3, {1}, {1}), Permutation::identity(3)), 0u);
  EXPECT_THROW(bandwidth(CooGraph(3, {}, {}), Permutation::identity(3)), undefined_metric_error);
}

TEST(Bandwidth, BelowN) {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_graph(rng, {.max_n = 50, .max_m = 100});
    if (g.m() == 0) continue;
    EXPECT_LT(bandwidth(g, random_order(g.n(), rng())), g.n());
  }
}

TEST(BruteForce, Examples) {
  EXPECT_EQ(brute_force_optimal_nscore(CooGraph(3, {0, 1}, {1, 2})).nscore, 0u);
  const auto best = brute_force_optimal_nscore(kShared);
  EXPECT_EQ(best.nscore, 1u);
  // Lexicographically first optimum keeps 0 and 1 adjacent at the front.
  EXPECT_EQ(std::vector<vertex_t>(best.ordering.order().begin(), best.ordering.order().end()),
            (std::vector<vertex_t>{0, 1, 2}));
}

TEST(BruteForce, Refusal) {
  EXPECT_THROW(brute_force_optimal_nscore(CooGraph(11, {}, {})), argument_error);
  EXPECT_THROW(brute_force_optimal_nscore(CooGraph(6, {}, {}), 5), argument_error);
  EXPECT_THROW(brute_force_optimal_nscore(CooGraph(3, {}, {}), 11), argument_error);
}

TEST(BruteForce, DominatesSampledOrderingsAndMatchesOracle) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_graph(rng, {.max_n = 7, .max_m = 25});
    const CooGraph g7(7, std::vector<vertex_t>(g.src().begin(), g.src().end()),
                      std::vector<vertex_t>(g.dst().begin(), g.dst().end()));
    const auto best = brute_force_optimal_nscore(g7);
    EXPECT_EQ(best.nscore, optimal_nscore_oracle(g7));
    for (int s = 0; s < 50; ++s) EXPECT_GE(best.nscore, nscore(g7, random_order(7, rng())));
  }
}

TEST(LocalityReport, PathIdentity) {
  const auto r = locality_report(CooGraph(3, {0, 1}, {1, 2}), Permutation::identity(3), 1, 32);
  EXPECT_EQ(r.nscore, 0u);
  EXPECT_EQ(r.bandwidth, 1u);
  EXPECT_EQ(r.m, 2u);
  EXPECT_DOUBLE_EQ(r.nbr, 1.0);
}

TEST(LocalityReport, NbrUsesRelabeledRows) {
  // Vertex 0 points at 0 and 40: two lines. Swapping 40 next to 0 makes one.
  const CooGraph g(41, {0, 0}, {0, 40});
  std::vector<vertex_t> order(41);
  std::iota(order.begin(), order.end(), vertex_t{0});
  std::swap(order[1], order[40]);
  const auto p = Permutation::from_order(order);
  EXPECT_DOUBLE_EQ(locality_report(g, Permutation::identity(41), 1, 32).nbr, 1.0);
  EXPECT_DOUBLE_EQ(locality_report(g, p, 1, 32).nbr, 0.5);
  EXPECT_DOUBLE_EQ(locality_report(g, p, 1, 32, true).nbr, 1.0);
}

#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace boba;
using namespace boba::testing;

TEST(Lcd, SingleVertexSelfLoop) {
  const auto g = generate_lcd({.n = 1, .c = 1, .seed = 123});
  ASSERT_EQ(g.m(), 1u);
  EXPECT_EQ(g.src()[0], 0u);
  EXPECT_EQ(g.dst()[0], 0u);
}

TEST(Lcd, EdgeCountAndBackwardAttachment) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = generate_lcd({.n = 1000, .c = 3, .seed = seed});
    ASSERT_EQ(g.m(), 3000u);
    for (edge_t i = 0; i < g.m(); ++i) {
      ASSERT_EQ(g.src()[i], i / 3);
      ASSERT_LE(g.dst()[i], g.src()[i]);
    }
  }
}

TEST(Lcd, DeterministicPerSeed) {
  EXPECT_EQ(generate_lcd({.n = 500, .c = 2, .seed = 4}), generate_lcd({.n = 500, .c = 2, .seed = 4}));
  EXPECT_NE(generate_lcd({.n = 500, .c = 2, .seed = 4}), generate_lcd({.n = 500, .c = 2, .seed = 5}));
}

TEST(Lcd, InvalidParams) {
  EXPECT_THROW(generate_lcd({.n = 0, .c = 1}), argument_error);
  EXPECT_THROW(generate_lcd({.n = 5, .c = 0}), argument_error);
}

TEST(Lcd, SecondVertexAttachmentProbabilities) {
  // Vertex 1 sees endpoints {0, 0} of the self-loop plus its own half-edge:
  // P(1 -> 0) = 2/3, P(1 -> 1) = 1/3.
  int to_zero = 0;
  constexpr int kSeeds = 6000;
  for (int s = 0; s < kSeeds; ++s) to_zero += generate_lcd({.n = 2, .c = 1, .seed = std::uint64_t(s)}).dst()[1] == 0;
  EXPECT_NEAR(to_zero / double(kSeeds), 2.0 / 3.0, 0.025);
}

TEST(Lcd, DegreeTailIsPowerLaw) {
  // Pooled CCDF of total degree over 30 graphs; least-squares slope in log-log.
  std::vector<std::uint64_t> hist;
  std::uint64_t total = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = generate_lcd({.n = 5000, .c = 5, .seed = seed});
    for (const auto d : total_degrees(g)) {
      if (d >= hist.size()) hist.resize(d + 1, 0);
      ++hist[d];
      ++total;
    }
  }
  std::vector<double> ccdf(hist.size() + 1, 0.0);
  for (std::size_t k = hist.size(); k-- > 0;) ccdf[k] = ccdf[k + 1] + double(hist[k]) / total;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int pts = 0;
  for (std::size_t k = 20; k <= 150 && k < hist.size(); ++k) {
    const double x = std::log(double(k)), y = std::log(ccdf[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++pts;
  }
  const double slope = (pts * sxy - sx * sy) / (pts * sxx - sx * sx);
  EXPECT_GT(-slope, 1.5);
  EXPECT_LT(-slope, 2.6);
}

TEST(Regular, Triangle) {
  const auto g = generate_regular_sorted(3, 2, 0);
  EXPECT_EQ(g.m(), 6u);
  EXPECT_EQ(std::vector<vertex_t>(g.dst().begin(), g.dst().end()),
            (std::vector<vertex_t>{0, 0, 1, 1, 2, 2}));
  EXPECT_EQ(std::vector<vertex_t>(g.src().begin(), g.src().end()),
            (std::vector<vertex_t>{1, 2, 0, 2, 0, 1}));
}

TEST(Regular, DegreesSortingAndSimplicity) {
  for (const auto& [n, d] : {std::pair<vertex_t, std::uint32_t>{6, 2}, {8, 3}, {9, 2}, {20, 4}}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto g = generate_regular_sorted(n, d, seed);
      ASSERT_EQ(g.m(), std::uint64_t(n) * d);
      std::vector<std::uint32_t> out(n, 0), in(n, 0);
      std::set<std::pair<vertex_t, vertex_t>> seen;
      for (edge_t i = 0; i < g.m(); ++i) {
        ++out[g.src()[i]];
        ++in[g.dst()[i]];
        ASSERT_NE(g.src()[i], g.dst()[i]);
        ASSERT_TRUE(seen.emplace(g.src()[i], g.dst()[i]).second);
        if (i > 0) {
          ASSERT_TRUE(std::pair(g.dst()[i - 1], g.src()[i - 1]) < std::pair(g.dst()[i], g.src()[i]));
        }
      }
      EXPECT_EQ(out, std::vector<std::uint32_t>(n, d));
      EXPECT_EQ(in, std::vector<std::uint32_t>(n, d));
      EXPECT_TRUE(is_symmetric(g));
    }
  }
}

TEST(Regular, Errors) {
  EXPECT_THROW(generate_regular_sorted(5, 3, 0), argument_error);
  EXPECT_THROW(generate_regular_sorted(4, 4, 0), argument_error);
  EXPECT_THROW(generate_regular_sorted(40, 10, 0, 1), retry_exhausted_error);
}

TEST(Grid, Shapes) {
  EXPECT_EQ(generate_grid(1, 1).m(), 0u);
  const auto path = generate_grid(1, 3);
  EXPECT_EQ(path.m(), 4u);
  EXPECT_EQ(bandwidth(path, Permutation::identity(3)), 1u);
  EXPECT_EQ(generate_grid(3, 3).m(), 24u);
  EXPECT_EQ(generate_grid(2, 2).m(), 8u);
  EXPECT_EQ(generate_grid(4, 5), generate_grid(4, 5));
  EXPECT_TRUE(is_symmetric(generate_grid(4, 5)));
  EXPECT_THROW(generate_grid(0, 3), argument_error);
}

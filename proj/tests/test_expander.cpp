#include <gtest/gtest.h>

#include "oracles.hpp"
#include "xtrellis/expander.hpp"

using namespace xtrellis;

namespace {

TEST(Expander, CompleteGraphsHaveZeroGamma) {
  for (std::size_t n : {1, 2, 3, 5, 8, 16, 32, 64}) {
    const auto sp = xg_gamma(xg_complete(n));
    EXPECT_LE(sp.gamma, 1e-12) << n;
    EXPECT_NEAR(sp.sigma1, static_cast<double>(n), 1e-9);
    EXPECT_EQ(sp.method, "exact-svd");
  }
}

TEST(Expander, SixCycle) {
  const auto g = xg_cycle(3);
  EXPECT_EQ(g.degree(), 2u);
  EXPECT_TRUE(g.is_simple());
  EXPECT_NEAR(xg_gamma(g).gamma, 0.5, 1e-9);
}

TEST(Expander, LongCyclesFollowTheCosineFormula) {
  for (std::size_t n : {4, 5, 7, 10}) {
    // Singular values of I + P are |1 + w^t| = 2 |cos(pi t / n)|.
    const double expect = std::fabs(std::cos(M_PI / static_cast<double>(n)));
    EXPECT_NEAR(xg_gamma(xg_cycle(n)).gamma, expect, 1e-9) << n;
  }
}

TEST(Expander, RandomRegularGraphs) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto g = xg_random_regular(20, 4, seed);
    EXPECT_EQ(g.num_edges(), 80u);
    EXPECT_TRUE(g.is_simple());
    for (std::size_t v = 0; v < 20; ++v) {
      EXPECT_EQ(g.left_incidence(v).size(), 4u);
      EXPECT_EQ(g.right_incidence(v).size(), 4u);
    }
    const auto sp = xg_gamma(g);
    EXPECT_GT(sp.gamma, 0.0);
    EXPECT_LT(sp.gamma, 1.0);
  }
  EXPECT_EQ(xg_random_regular(20, 4, 3).edges(), xg_random_regular(20, 4, 3).edges());
}

TEST(Expander, PowerIterationAgreesWithSvd) {
  const auto g = xg_random_regular(600, 3, 9);
  const auto power = xg_gamma(g);
  EXPECT_EQ(power.method, "power-iteration");
  const auto exact = xg_gamma(g, 1000);
  EXPECT_EQ(exact.method, "exact-svd");
  EXPECT_NEAR(power.gamma, exact.gamma, 1e-6);
}

TEST(Expander, MixingInequalityOnRandomSubsets) {
  std::vector<BipartiteGraph> graphs{xg_complete(6), xg_cycle(3), xg_cycle(9)};
  for (std::uint64_t s = 0; s < 4; ++s) graphs.push_back(xg_random_regular(10 + 3 * s, 2 + s, 100 + s));
  for (const auto& g : graphs) {
    const double gamma = xg_gamma(g).gamma;
    SplitMix rng(51);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<std::size_t> S, T;
      while (S.empty() || T.empty()) {
        S.clear();
        T.clear();
        for (std::size_t v = 0; v < g.n(); ++v) {
          if (rng.below(2)) S.push_back(v);
          if (rng.below(2)) T.push_back(v);
        }
      }
      const auto m = xg_mixing_check(g, S, T, gamma);
      ASSERT_EQ(m.lhs, oracle::edges_between(g, S, T));
      const double s = static_cast<double>(S.size()), t = static_cast<double>(T.size());
      const double rhs = ((1 - gamma) * s * t / static_cast<double>(g.n()) + gamma * std::sqrt(s * t)) *
                         static_cast<double>(g.degree());
      ASSERT_LE(static_cast<double>(m.lhs), rhs + 1e-9);
      ASSERT_TRUE(m.holds);
    }
    EXPECT_EQ(xg_mixing_trials(g, gamma, 1000, 7).violations, 0u);
  }
}

TEST(Expander, MixingDetectsAnUnderstatedGamma) {
  // The 6-cycle with gamma forced to 0 claims |E(S,T)| <= 2|S||T|/3.
  const auto g = xg_cycle(3);
  const auto m = xg_mixing_check(g, {0}, {0, 1}, 0.0);
  EXPECT_EQ(m.lhs, 2u);
  EXPECT_FALSE(m.holds);
}

TEST(Expander, Errors) {
  auto kind = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::UsageError;
  };
  EXPECT_EQ(kind([] { BipartiteGraph::make(2, 2, {{0, 0}, {0, 1}, {0, 0}, {1, 1}}); }), ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind([] { xg_random_regular(3, 4, 1); }), ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind([] { xg_mixing_check(xg_complete(2), {}, {0}, 0.0); }), ErrorKind::EmptySubset);
}

TEST(Expander, EdgeIndexingPreservesOrder) {
  const auto g = xg_random_regular(7, 3, 4);
  const auto idx = xg_copies(g, 2);
  EXPECT_EQ(idx.total(), 3 * 21u);
  EXPECT_TRUE(idx.consistent());
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t p = 0; p < 21; ++p) {
      EXPECT_EQ(idx.copy_of(idx.offset(c, p)), c);
      EXPECT_EQ(idx.position_of(idx.offset(c, p)), p);
    }
}

}  // namespace

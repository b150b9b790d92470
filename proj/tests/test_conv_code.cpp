#include <gtest/gtest.h>

#include "oracles.hpp"
#include "xtrellis/conv_code.hpp"

using namespace xtrellis;

namespace {

const oracle::PolyGen kG57 = {{{1, 0, 1}, {1, 1, 1}}};

ConvolutionalCode make(const FieldPtr& f, const oracle::PolyGen& G) {
  return ConvolutionalCode::create(PolyGeneratorMatrix::from_polynomials(f, G));
}

TEST(ConvCode, BaselineProfileMatchesEnumeration) {
  const auto f = Field::make(2, 1);
  const auto code = make(f, kG57);
  const auto expect = oracle::conv_column_distances(*f, kG57, 5);
  EXPECT_EQ(expect, (std::vector<std::size_t>{2, 3, 3, 4, 4, 5}));
  EXPECT_EQ(column_distances(code, 5), expect);
  for (std::size_t j = 0; j <= 5; ++j) EXPECT_EQ(column_distance_enumerate(code, j), expect[j]);
  const auto fd = free_distance(code);
  EXPECT_EQ(fd.weight, oracle::conv_free_distance(*f, kG57, 12));
  EXPECT_EQ(fd.weight, 5u);
  EXPECT_FALSE(fd.catastrophic);
}

TEST(ConvCode, BaselineBounds) {
  const auto p = cc_bounds(make(Field::make(2, 1), kG57));
  EXPECT_EQ(p.delta, 2u);
  EXPECT_TRUE(p.delta_exact);
  EXPECT_EQ(p.L, 4u);
  EXPECT_EQ(p.eq1_rhs, 6u);
  EXPECT_EQ(p.free, 5u);
  EXPECT_FALSE(p.is_mds);
  EXPECT_FALSE(p.is_mdp);
  EXPECT_TRUE(p.chain_holds);
  EXPECT_TRUE(p.monotone);
  for (std::size_t j = 0; j < p.column.size(); ++j) EXPECT_LE(p.column[j], p.eq2_rhs[j]);
}

TEST(ConvCode, RandomGeneratorsMatchEnumeration) {
  SplitMix rng(31);
  for (const auto& f : {Field::make(2, 1), Field::make(3, 1), Field::make(2, 2)}) {
    for (int trial = 0; trial < 12; ++trial) {
      const std::size_t n = 2 + rng.below(2), k = 1 + rng.below(n - 1), m = 1 + rng.below(2);
      oracle::PolyGen G(k, std::vector<std::vector<Elem>>(n, std::vector<Elem>(m + 1)));
      for (auto& row : G)
        for (auto& p : row)
          for (auto& c : p) c = static_cast<Elem>(rng.below(f->q()));
      Matrix g0(f, k, n);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) g0(i, j) = G[i][j][0];
      if (rank(g0) < k) {
        EXPECT_THROW(make(f, G), Error);
        continue;
      }
      const auto code = make(f, G);
      std::uint64_t space = 1;
      std::size_t upto = 0;
      while (upto < 4) {
        space = 1;
        for (std::size_t i = 0; i < k * (upto + 2); ++i) space *= f->q();
        if (space > 20000) break;
        ++upto;
      }
      EXPECT_EQ(column_distances(code, upto), oracle::conv_column_distances(*f, G, upto));
    }
  }
}

TEST(ConvCode, FreeDistanceMatchesEnumeration) {
  const auto f = Field::make(2, 1);
  for (const auto& G : std::vector<oracle::PolyGen>{
           kG57, {{{1, 1, 1, 1}, {1, 1, 0, 1}}}, {{{1, 1}, {0, 1}, {1, 1}}}, {{{1, 0, 1}, {1, 1, 1}, {1, 1, 1}}}}) {
    const auto fd = free_distance(make(f, G));
    EXPECT_EQ(fd.weight, oracle::conv_free_distance(*f, G, 12));
  }
}

TEST(ConvCode, CatastrophicGeneratorIsFlagged) {
  // (1+D, 1+D^2) = (1+D)(1, 1+D): the all-ones input has weight 4 output.
  const auto fd = free_distance(make(Field::make(2, 1), {{{1, 1}, {1, 0, 1}}}));
  EXPECT_TRUE(fd.catastrophic);
}

TEST(ConvCode, TruncatedGeneratorEncodes) {
  const auto f = Field::make(3, 1);
  const oracle::PolyGen G = {{{1, 2}, {0, 1}, {2, 2}}, {{0, 1}, {1, 0}, {1, 1}}};
  const auto code = make(f, G);
  const auto t = code.truncated_generator(2);
  std::vector<Elem> digits(6, 0);
  do {
    std::vector<Vec> x(3, Vec(2));
    for (std::size_t i = 0; i < 6; ++i) x[i / 2][i % 2] = digits[i];
    const auto c = oracle::conv_encode(*f, G, x);
    const auto flat = vec_mat(digits, t);
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t j = 0; j < 3; ++j) ASSERT_EQ(flat[b * 3 + j], c[b][j]);
    EXPECT_EQ(code.encode(x), c);
  } while (oracle::next_digits(digits, 3));
}

TEST(ConvCode, ExhaustiveSearchFindsMdpOverGF4) {
  const auto f = Field::make(2, 2);
  const auto r = search_profile(2, 1, 1, f, 1u << 20);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_EQ(r.examined, 256u);
  EXPECT_EQ(r.valid, 225u);
  EXPECT_TRUE(r.all_chains_hold);
  EXPECT_GT(r.mdp_count, 0u);
  EXPECT_EQ(r.L, 2u);
  EXPECT_EQ(r.profile, (std::vector<std::size_t>{2, 3, 4}));
  const auto p = cc_bounds(r.code);
  EXPECT_EQ(p.free, 4u);
  EXPECT_EQ(p.eq1_rhs, 4u);
  EXPECT_TRUE(p.is_mds);
  EXPECT_TRUE(p.is_mdp);

  // Independent count over all 256 pairs.
  std::size_t mdp = 0, valid = 0;
  std::vector<Elem> d(4, 0);
  do {
    if ((d[0] == 0 && d[1] == 0) || (d[2] == 0 && d[3] == 0)) continue;
    ++valid;
    const oracle::PolyGen G = {{{d[0], d[2]}, {d[1], d[3]}}};
    const auto prof = oracle::conv_column_distances(*f, G, 2);
    ASSERT_TRUE(column_chain_holds(2, 1, prof));
    mdp += prof == std::vector<std::size_t>{2, 3, 4};
  } while (oracle::next_digits(d, 4));
  EXPECT_EQ(valid, r.valid);
  EXPECT_EQ(mdp, r.mdp_count);
}

TEST(ConvCode, SearchIsThreadInvariant) {
  const auto f = Field::make(2, 2);
  DistanceOptions one, four;
  four.threads = 4;
  const auto a = search_profile(3, 2, 1, f, 300, 5, one);
  const auto b = search_profile(3, 2, 1, f, 300, 5, four);
  EXPECT_EQ(a.profile, b.profile);
  EXPECT_EQ(a.code.coeff(0), b.code.coeff(0));
  EXPECT_EQ(a.code.coeff(1), b.code.coeff(1));
}

TEST(ConvCode, ChainProperty) {
  EXPECT_TRUE(column_chain_holds(2, 1, {2, 3, 4}));
  EXPECT_TRUE(column_chain_holds(2, 1, {2, 3, 3}));
  EXPECT_FALSE(column_chain_holds(2, 1, {1, 3}));
}

TEST(ConvCode, NonReducedGeneratorDegree) {
  // Rows (1, D) and (D, D^2) are dependent over F(D): not reduced.
  const auto f = Field::make(2, 1);
  const auto code = make(f, {{{1}, {0, 1}, {1}}, {{0, 1}, {0, 0, 1}, {1, 1}}});
  EXPECT_FALSE(code.reduced());
  EXPECT_FALSE(code.degree().has_value());
  EXPECT_EQ(code.degree_upper(), 3u);
}

TEST(ConvCode, StateGuard) {
  const auto f = Field::make(2, 2);
  const auto code = make(f, {{{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}, {1}}});
  DistanceOptions tight;
  tight.state_guard = 1000;
  try {
    column_distances(code, 2, tight);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
  EXPECT_EQ(column_distance(code, 2, tight), column_distance_enumerate(code, 2));
}

}  // namespace

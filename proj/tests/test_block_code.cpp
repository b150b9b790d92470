#include <gtest/gtest.h>

#include "oracles.hpp"
#include "xtrellis/block_code.hpp"
#include "xtrellis/rng.hpp"

using namespace xtrellis;

namespace {

std::vector<Vec> rows_of(const Matrix& m) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.emplace_back(m.row(i).begin(), m.row(i).end());
  return out;
}

TEST(BlockCode, Hamming743) {
  const auto f = Field::make(2, 1);
  const auto c = LinearBlockCode::from_generator(Matrix::from_rows(
      f, {{1, 0, 0, 0, 0, 1, 1}, {0, 1, 0, 0, 1, 0, 1}, {0, 0, 1, 0, 1, 1, 0}, {0, 0, 0, 1, 1, 1, 1}}, 7));
  EXPECT_EQ(c.n(), 7u);
  EXPECT_EQ(c.k(), 4u);
  EXPECT_EQ(c.min_distance(), 3u);
  EXPECT_EQ(c.parity_check().rows(), 3u);
}

TEST(BlockCode, StandardFamilies) {
  for (const auto& f : {Field::make(2, 1), Field::make(2, 2), Field::make(5, 1)}) {
    for (std::size_t n = 2; n <= 6; ++n) {
      EXPECT_EQ(LinearBlockCode::single_parity_check(f, n).min_distance(), 2u);
      EXPECT_EQ(LinearBlockCode::repetition(f, n).min_distance(), n);
      EXPECT_EQ(LinearBlockCode::full_space(f, n).min_distance(), 1u);
    }
  }
}

TEST(BlockCode, MinDistanceMatchesEnumeration) {
  SplitMix rng(21);
  for (const auto& f : {Field::make(2, 1), Field::make(3, 1), Field::make(2, 2)}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 3 + rng.below(5), k = 1 + rng.below(std::min<std::size_t>(n, 4));
      Matrix g(f, k, n);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = static_cast<Elem>(rng.below(f->q()));
      if (g.is_zero()) continue;
      const auto c = LinearBlockCode::from_generator(g);
      const auto expect = oracle::block_min_distance(*f, rows_of(g), n);
      EXPECT_EQ(c.min_distance(), expect);
      EXPECT_EQ(c.min_distance(LinearBlockCode::kDefaultGuard, 3), expect);
    }
  }
}

TEST(BlockCode, MembershipAndCoordinates) {
  const auto f = Field::make(3, 1);
  const auto c = LinearBlockCode::single_parity_check(f, 4);
  const auto words = oracle::span(*f, rows_of(c.generator()), 4);
  std::set<Vec> set(words.begin(), words.end());
  std::vector<Elem> v(4, 0);
  do {
    const Vec w(v.begin(), v.end());
    EXPECT_EQ(c.contains(w), set.count(w) > 0);
    if (c.contains(w)) {
      EXPECT_EQ(c.encode(c.coordinates(w)), w);
    }
  } while (oracle::next_digits(v, 3));
}

TEST(BlockCode, Errors) {
  const auto f = Field::make(2, 1);
  EXPECT_THROW(LinearBlockCode::from_generator(Matrix(f, 2, 3)), Error);
  const auto big = LinearBlockCode::full_space(f, 30);
  try {
    big.min_distance(1u << 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooLargeToEnumerate);
  }
  EXPECT_THROW(big.contains(Vec(3, 0)), Error);
}

}  // namespace

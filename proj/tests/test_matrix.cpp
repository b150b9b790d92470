#include <gtest/gtest.h>

#include "oracles.hpp"
#include "xtrellis/matrix.hpp"
#include "xtrellis/rng.hpp"

using namespace xtrellis;

namespace {

Matrix random_matrix(const FieldPtr& f, std::size_t r, std::size_t c, SplitMix& rng, double zero_bias = 0.3) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.uniform01() < zero_bias ? 0 : static_cast<Elem>(rng.below(f->q()));
  return m;
}

std::vector<Vec> rows_of(const Matrix& m) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.emplace_back(m.row(i).begin(), m.row(i).end());
  return out;
}

TEST(Matrix, RankMatchesSpanSize) {
  SplitMix rng(11);
  for (const auto& f : {Field::make(2, 1), Field::make(3, 1), Field::make(2, 2)}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t r = 1 + rng.below(4), c = 1 + rng.below(5);
      const auto m = random_matrix(f, r, c, rng);
      const auto words = oracle::span(*f, rows_of(m), c);
      std::size_t expect = 1, rk = rank(m);
      for (std::size_t i = 0; i < rk; ++i) expect *= f->q();
      EXPECT_EQ(words.size(), expect);
    }
  }
}

TEST(Matrix, NullspaceIsTheOrthogonalComplement) {
  SplitMix rng(12);
  for (const auto& f : {Field::make(2, 1), Field::make(5, 1), Field::make(2, 3)}) {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t r = 1 + rng.below(4), c = 2 + rng.below(4);
      const auto m = random_matrix(f, r, c, rng);
      const auto res = rref(m);
      ASSERT_EQ(res.rank + res.nullspace.rows(), c);
      EXPECT_TRUE((m * res.nullspace.transpose()).is_zero());
      // Every vector orthogonal to the rows lies in the nullspace span.
      std::vector<Elem> v(c, 0);
      std::size_t orth = 0;
      do {
        const auto prod = vec_mat(v, m.transpose());
        if (is_zero(prod)) {
          ++orth;
          if (res.nullspace.rows() > 0) {
            EXPECT_TRUE(in_row_space(res.nullspace, v));
          } else {
            EXPECT_TRUE(is_zero(v));
          }
        }
      } while (oracle::next_digits(v, f->q()));
      std::size_t expect = 1;
      for (std::size_t i = 0; i < res.nullspace.rows(); ++i) expect *= f->q();
      EXPECT_EQ(orth, expect);
    }
  }
}

TEST(Matrix, RrefIsReduced) {
  SplitMix rng(13);
  const auto f = Field::make(3, 1);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = random_matrix(f, 4, 6, rng);
    const auto res = rref(m);
    for (std::size_t i = 0; i < res.rank; ++i) {
      const auto p = res.pivots[i];
      EXPECT_EQ(res.rref(i, p), 1u);
      for (std::size_t r = 0; r < m.rows(); ++r)
        if (r != i) {
          EXPECT_EQ(res.rref(r, p), 0u);
        }
      if (i > 0) {
        EXPECT_GT(p, res.pivots[i - 1]);
      }
    }
    EXPECT_EQ(oracle::span(*f, rows_of(m), 6), oracle::span(*f, rows_of(res.rref), 6));
  }
}

TEST(Matrix, IntersectionMatchesSetIntersection) {
  SplitMix rng(14);
  for (const auto& f : {Field::make(2, 1), Field::make(3, 1)}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t c = 3 + rng.below(3);
      const auto a = random_matrix(f, 1 + rng.below(c), c, rng);
      const auto b = random_matrix(f, 1 + rng.below(c), c, rng);
      const auto sa = oracle::span(*f, rows_of(a), c);
      const auto sb = oracle::span(*f, rows_of(b), c);
      std::vector<Vec> both;
      std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(both));
      const auto inter = subspace_intersect(a, b);
      const auto si = inter.rows() == 0 ? std::vector<Vec>{Vec(c, 0)} : oracle::span(*f, rows_of(inter), c);
      EXPECT_EQ(si, both);
    }
  }
}

TEST(Matrix, Errors) {
  const auto f = Field::make(2, 1);
  EXPECT_THROW(subspace_intersect(Matrix(f, 1, 3), Matrix(f, 1, 4)), Error);
  EXPECT_THROW(Matrix(f, 2, 2) * Matrix(f, 3, 1), Error);
  EXPECT_THROW(Matrix(f, 1, 2, {0, 2}), Error);
}

}  // namespace

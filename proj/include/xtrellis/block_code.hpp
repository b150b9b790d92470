#pragma once
// Linear block codes over GF(q).

#include <cstdint>
#include <limits>
#include <span>

#include "xtrellis/matrix.hpp"
#include "xtrellis/parallel.hpp"

namespace xtrellis {

class LinearBlockCode {
 public:
  static constexpr std::uint64_t kDefaultGuard = 1ull << 24;

  /// Reduces g to a full-rank basis (k may shrink) and derives a parity check.
  static LinearBlockCode from_generator(const Matrix& g) {
    require(g.rows() > 0 && g.cols() > 0 && !g.is_zero(), ErrorKind::ZeroMatrix, "generator is zero");
    LinearBlockCode c;
    auto r = rref(g);
    c.gen_ = Matrix(g.field(), r.rank, g.cols());
    for (std::size_t i = 0; i < r.rank; ++i)
      std::copy(r.rref.row(i).begin(), r.rref.row(i).end(), c.gen_.row(i).begin());
    c.pivots_ = r.pivots;
    c.parity_ = r.nullspace;
    return c;
  }

  /// The whole space GF(q)^n.
  static LinearBlockCode full_space(FieldPtr f, std::size_t n) {
    return from_generator(Matrix::identity(std::move(f), n));
  }

  /// Single-parity-check [n, n-1] code: words whose symbols sum to zero.
  static LinearBlockCode single_parity_check(FieldPtr f, std::size_t n) {
    require(n >= 2, ErrorKind::PreconditionViolated, "parity code needs n >= 2");
    Matrix g(f, n - 1, n);
    const Elem minus_one = f->neg(1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      g(i, i) = 1;
      g(i, n - 1) = minus_one;
    }
    return from_generator(g);
  }

  static LinearBlockCode repetition(FieldPtr f, std::size_t n) {
    Matrix g(f, 1, n, Vec(n, 1));
    return from_generator(g);
  }

  const FieldPtr& field() const noexcept { return gen_.field(); }
  std::size_t n() const noexcept { return gen_.cols(); }
  std::size_t k() const noexcept { return gen_.rows(); }
  const Matrix& generator() const noexcept { return gen_; }
  const Matrix& parity_check() const noexcept { return parity_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(std::span<const Elem> word) const {
    require(word.size() == n(), ErrorKind::LengthMismatch,
            "word length " + std::to_string(word.size()) + " != n = " + std::to_string(n()));
    const Field& f = *field();
    for (std::size_t i = 0; i < parity_.rows(); ++i) {
      Elem acc = 0;
      auto h = parity_.row(i);
      for (std::size_t j = 0; j < word.size(); ++j) acc = f.add(acc, f.mul(h[j], word[j]));
      if (acc != 0) return false;
    }
    return true;
  }

  /// Message coordinates of a codeword w.r.t. the reduced generator: the
  /// symbols at the pivot columns.
  Vec coordinates(std::span<const Elem> word) const {
    Vec u(k());
    for (std::size_t i = 0; i < k(); ++i) u[i] = word[pivots_[i]];
    return u;
  }

  Vec encode(std::span<const Elem> message) const { return vec_mat(message, gen_); }

  /// Exact minimum distance by enumerating messages whose leading nonzero
  /// coordinate is 1 (scalar multiples share a weight).
  std::size_t min_distance(std::uint64_t guard = kDefaultGuard, unsigned threads = 1) const {
    require(k() >= 1, ErrorKind::PreconditionViolated, "min distance of a zero-dimensional code");
    const std::uint64_t q = field()->q();
    std::uint64_t space = 1;
    for (std::size_t i = 0; i < k(); ++i) {
      space *= q;
      require(space <= guard, ErrorKind::TooLargeToEnumerate,
              "q^k exceeds enumeration guard; supply the distance explicitly");
    }
    const Field& f = *field();
    const std::size_t kk = k();
    // Shard over the position of the leading 1 and the value of the next
    // coordinate so the work splits evenly enough.
    std::vector<std::size_t> best(resolve_threads(threads), std::numeric_limits<std::size_t>::max());
    parallel_shards(kk, resolve_threads(threads), [&](std::uint64_t b, std::uint64_t e, unsigned t) {
      for (std::uint64_t lead = b; lead < e; ++lead) {
        // Message: zeros before lead, 1 at lead, free digits after.
        const std::size_t free_count = kk - lead - 1;
        Vec word(gen_.row(lead).begin(), gen_.row(lead).end());
        std::vector<Elem> digits(free_count, 0);
        while (true) {
          best[t] = std::min(best[t], weight(word));
          // Mixed-radix increment, updating the codeword incrementally.
          std::size_t pos = 0;
          while (pos < free_count) {
            const std::size_t row = lead + 1 + pos;
            const Elem old = digits[pos];
            const Elem next = (old + 1 == q) ? 0 : old + 1;
            axpy(f, f.sub(next, old), gen_.row(row), word);
            digits[pos] = next;
            if (next != 0) break;
            ++pos;
          }
          if (pos == free_count) break;
        }
      }
    });
    std::size_t d = *std::min_element(best.begin(), best.end());
    require(d <= n() - k() + 1, ErrorKind::PreconditionViolated, "Singleton bound violated");
    return d;
  }

 private:
  Matrix gen_;
  Matrix parity_;
  std::vector<std::size_t> pivots_;
};

}  // namespace xtrellis

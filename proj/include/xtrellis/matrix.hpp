#pragma once
// Dense matrices over GF(q) and the exact row-reduction toolkit built on them.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "xtrellis/error.hpp"
#include "xtrellis/field.hpp"

namespace xtrellis {

using Vec = std::vector<Elem>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr f, std::size_t rows, std::size_t cols)
      : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  Matrix(FieldPtr f, std::size_t rows, std::size_t cols, std::vector<Elem> data)
      : field_(std::move(f)), rows_(rows), cols_(cols), data_(std::move(data)) {
    require(data_.size() == rows_ * cols_, ErrorKind::LengthMismatch, "matrix data size");
    for (auto v : data_)
      require(v < field_->q(), ErrorKind::PreconditionViolated, "matrix entry outside field");
  }
  static Matrix from_rows(FieldPtr f, const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(std::move(f), rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == cols, ErrorKind::LengthMismatch, "ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }
  static Matrix identity(FieldPtr f, std::size_t n) {
    Matrix m(std::move(f), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  const std::vector<Elem>& data() const noexcept { return data_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Elem v) { return v == 0; });
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Columns [c0, c0 + width) as a new matrix.
  Matrix col_block(std::size_t c0, std::size_t width) const {
    Matrix b(field_, rows_, width);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < width; ++j) b(i, j) = (*this)(i, c0 + j);
    return b;
  }

  Matrix operator*(const Matrix& o) const {
    require_same_field(*field_, *o.field_);
    require(cols_ == o.rows_, ErrorKind::LengthMismatch, "matrix product dimensions");
    const Field& f = *field_;
    Matrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Elem a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = f.add(r(i, j), f.mul(a, o(k, j)));
      }
    return r;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_ &&
           (field_ == o.field_ || (field_ && o.field_ && field_->same_as(*o.field_)));
  }

 private:
  FieldPtr field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> data_;
};

/// acc += scale * v, elementwise.
inline void axpy(const Field& f, Elem scale, std::span<const Elem> v, std::span<Elem> acc) {
  if (scale == 0) return;
  if (scale == 1) {
    for (std::size_t i = 0; i < v.size(); ++i) acc[i] = f.add(acc[i], v[i]);
    return;
  }
  for (std::size_t i = 0; i < v.size(); ++i) acc[i] = f.add(acc[i], f.mul(scale, v[i]));
}

/// Row vector times matrix.
inline Vec vec_mat(std::span<const Elem> x, const Matrix& m) {
  require(x.size() == m.rows(), ErrorKind::LengthMismatch, "vector-matrix dimensions");
  Vec out(m.cols(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) axpy(*m.field(), x[i], m.row(i), out);
  return out;
}

inline std::size_t weight(std::span<const Elem> v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](Elem x) { return x != 0; }));
}

inline bool is_zero(std::span<const Elem> v) {
  return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

struct RrefResult {
  Matrix rref;                      // same shape as the input
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot column of each of the first `rank` rows
  Matrix nullspace;                 // (cols - rank) x cols, rows span {x : m x^T = 0}
};

inline RrefResult rref(const Matrix& m) {
  const Field& f = *m.field();
  RrefResult res{m, 0, {}, {}};
  Matrix& a = res.rref;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    const Elem inv = f.inv(a(r, c));
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) = f.mul(a(r, j), inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Elem factor = f.neg(a(i, c));
      axpy(f, factor, a.row(r), a.row(i));
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;

  // Null space: one basis vector per free column.
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : res.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec x(a.cols(), 0);
    x[free] = 1;
    for (std::size_t i = 0; i < res.rank; ++i) x[res.pivots[i]] = f.neg(a(i, free));
    basis.push_back(std::move(x));
  }
  res.nullspace = Matrix::from_rows(m.field(), basis, a.cols());
  return res;
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

/// Nonzero rows of the RREF: a canonical basis of the row space.
inline Matrix row_basis(const Matrix& m) {
  auto r = rref(m);
  Matrix b(m.field(), r.rank, m.cols());
  for (std::size_t i = 0; i < r.rank; ++i) std::copy(r.rref.row(i).begin(), r.rref.row(i).end(), b.row(i).begin());
  return b;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.cols(), ErrorKind::AmbientMismatch, "vstack column mismatch");
  Matrix s(a.field(), a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) std::copy(a.row(i).begin(), a.row(i).end(), s.row(i).begin());
  for (std::size_t i = 0; i < b.rows(); ++i)
    std::copy(b.row(i).begin(), b.row(i).end(), s.row(a.rows() + i).begin());
  return s;
}

/// True iff v lies in the row space of m (rank test on the augmented matrix).
inline bool in_row_space(const Matrix& m, std::span<const Elem> v) {
  require(v.size() == m.cols(), ErrorKind::LengthMismatch, "membership vector length");
  Matrix one(m.field(), 1, v.size(), Vec(v.begin(), v.end()));
  return rank(vstack(m, one)) == rank(m);
}

/// Basis (in RREF) of rowspace(a) ∩ rowspace(b).
inline Matrix subspace_intersect(const Matrix& a_basis, const Matrix& b_basis) {
  require(a_basis.cols() == b_basis.cols(), ErrorKind::AmbientMismatch, "ambient dimensions differ");
  require_same_field(*a_basis.field(), *b_basis.field());
  const Matrix a = row_basis(a_basis);
  const Matrix b = row_basis(b_basis);
  const std::size_t ambient = a_basis.cols();
  if (a.rows() == 0 || b.rows() == 0) return Matrix(a_basis.field(), 0, ambient);
  // (u, v) with u A + v B = 0 gives u A in both spaces.
  const Matrix stacked = vstack(a, b);
  const auto left_null = rref(stacked.transpose()).nullspace;
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < left_null.rows(); ++i) {
    auto u = left_null.row(i).first(a.rows());
    rows.push_back(vec_mat(u, a));
  }
  const Matrix inter = row_basis(Matrix::from_rows(a_basis.field(), rows, ambient));
  require(inter.rows() + ambient >= a.rows() + b.rows(), ErrorKind::AmbientMismatch,
          "intersection dimension below dim A + dim B - ambient");
  return inter;
}

}  // namespace xtrellis

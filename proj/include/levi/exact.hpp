#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "levi/error.hpp"

namespace levi {

using Scalar = mpq_class;
using Row = std::vector<Scalar>;

inline bool is_zero(const Row& r) {
  return std::all_of(r.begin(), r.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

inline std::string to_string(const Scalar& x) { return x.get_str(); }

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows, Row(cols)) {}
  Matrix(std::initializer_list<std::initializer_list<long>> init) {
    for (const auto& r : init) {
      Row row;
      for (long x : r) row.emplace_back(x);
      append(std::move(row));
    }
  }
  static Matrix from_rows(std::size_t cols, std::vector<Row> rows) {
    Matrix m;
    m.cols_ = cols;
    for (auto& r : rows) m.append(std::move(r));
    return m;
  }

  std::size_t rows() const { return data_.size(); }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r][c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r][c]; }
  const Row& row(std::size_t r) const { return data_[r]; }
  Row& row(std::size_t r) { return data_[r]; }
  const std::vector<Row>& data() const { return data_; }

  void append(Row r) {
    if (data_.empty() && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) fail(ErrorCode::dimension_mismatch, "row length differs from column count");
    data_.push_back(std::move(r));
  }

  Matrix transposed() const {
    Matrix t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = data_[i][j];
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<Row> data_;
};

inline Row multiply(const Matrix& m, const Row& x) {
  if (x.size() != m.cols()) fail(ErrorCode::dimension_mismatch, "vector length differs from column count");
  Row out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0 && sgn(x[j]) != 0) out[i] += m(i, j) * x[j];
  return out;
}

struct Echelon {
  std::size_t rank = 0;
  Matrix echelon;
  std::vector<std::size_t> pivots;
};

// in-place reduction of rows; returns pivot columns of the nonzero rows,
// which end up first and normalized
inline std::vector<std::size_t> rref_in_place(std::vector<Row>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    if (rows[r][c] != 1) {
      Scalar inv = 1 / rows[r][c];
      for (std::size_t j = c; j < cols; ++j)
        if (sgn(rows[r][j]) != 0) rows[r][j] *= inv;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      Scalar f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (sgn(rows[r][j]) != 0) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline Echelon rref(Matrix m) {
  std::vector<Row> rows = m.data();
  auto pivots = rref_in_place(rows, m.cols());
  Echelon e;
  e.rank = pivots.size();
  e.echelon = Matrix::from_rows(m.cols(), std::move(rows));
  e.pivots = std::move(pivots);
  return e;
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

inline std::vector<Row> kernel(const Matrix& m) {
  std::vector<Row> rows = m.data();
  auto pivots = rref_in_place(rows, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Row> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Row v(m.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -rows[k][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::optional<Row> solve(const Matrix& m, const Row& b) {
  if (b.size() != m.rows()) fail(ErrorCode::dimension_mismatch, "right-hand side length differs from row count");
  std::size_t n = m.cols();
  std::vector<Row> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Row r = m.row(i);
    r.push_back(b[i]);
    rows.push_back(std::move(r));
  }
  auto pivots = rref_in_place(rows, n + 1);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  Row x(n);
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = rows[k][n];
  return x;
}

// Incrementally maintained reduced row space.
class RowSpace {
 public:
  explicit RowSpace(std::size_t cols = 0) : cols_(cols) {}

  std::size_t cols() const { return cols_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // reduce v modulo the space; result has zeros at all pivot columns
  void reduce(Row& v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Scalar& f = v[pivots_[k]];
      if (sgn(f) == 0) continue;
      Scalar c = f;
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn(rows_[k][j]) != 0) v[j] -= c * rows_[k][j];
    }
  }
  Row reduced(Row v) const {
    reduce(v);
    return v;
  }
  bool contains(const Row& v) const { return is_zero(reduced(v)); }

  // returns true when v enlarged the space
  bool insert(Row v) {
    if (v.size() != cols_) fail(ErrorCode::dimension_mismatch, "row length differs from space width");
    reduce(v);
    std::size_t p = 0;
    while (p < cols_ && sgn(v[p]) == 0) ++p;
    if (p == cols_) return false;
    Scalar inv = 1 / v[p];
    for (auto& x : v)
      if (sgn(x) != 0) x *= inv;
    for (auto& r : rows_) {
      if (sgn(r[p]) == 0) continue;
      Scalar f = r[p];
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn(v[j]) != 0) r[j] -= f * v[j];
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, p);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
  }

 private:
  std::size_t cols_;
  std::vector<Row> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace levi

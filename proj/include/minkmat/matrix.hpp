#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "minkmat/fields.hpp"

namespace minkmat {

/// Dense matrix over a field object F. Rows are the primary axis: subspace
/// bases are stored as row vectors and vectors act by v * M on the right.
template <class F>
class Matrix {
 public:
  using Elem = typename F::Elem;
  using Row = std::vector<Elem>;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)),
        rows_(rows),
        cols_(cols),
        data_(rows * cols, field_.zero()) {}

  static Matrix from_rows(F field, std::size_t cols,
                          const std::vector<Row>& rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols)
        throw InputError("row length " + std::to_string(rows[r].size()) +
                         " does not match column count " +
                         std::to_string(cols));
      for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
    }
    return m;
  }

  static Matrix identity(F field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = m.field_.one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const F& field() const { return field_; }

  Elem& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Elem& at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Row row(std::size_t r) const {
    return Row(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }

  void append_row(const Row& v) {
    if (v.size() != cols_) throw InputError("appended row has wrong length");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }

  void append_rows(const Matrix& other) {
    if (other.cols_ != cols_)
      throw InputError("stacked matrices have different widths");
    data_.insert(data_.end(), other.data_.begin(), other.data_.end());
    rows_ += other.rows_;
  }

  /// In-place Gauss-Jordan reduction to reduced row echelon form. Zero rows
  /// are dropped, so afterwards rows() == rank. Returns the pivot columns
  /// in increasing order. The result is the unique RREF basis of the row
  /// space, which makes equality of row spaces a plain comparison.
  std::vector<std::size_t> reduce() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t pr = r;
      while (pr < rows_ && field_.is_zero(at(pr, c))) ++pr;
      if (pr == rows_) continue;
      if (pr != r)
        for (std::size_t j = 0; j < cols_; ++j)
          std::swap(at(r, j), at(pr, j));
      Elem scale = field_.inv(at(r, c));
      for (std::size_t j = c; j < cols_; ++j)
        at(r, j) = field_.mul(at(r, j), scale);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || field_.is_zero(at(i, c))) continue;
        Elem f = at(i, c);
        for (std::size_t j = c; j < cols_; ++j)
          at(i, j) = field_.sub(at(i, j), field_.mul(f, at(r, j)));
      }
      pivots.push_back(c);
      ++r;
    }
    data_.resize(r * cols_);
    rows_ = r;
    return pivots;
  }

  std::size_t rank() const {
    Matrix copy = *this;
    return copy.reduce().size();
  }

  /// Basis of {x : (this) * x^T = 0}, one row per kernel dimension,
  /// in reduced row echelon form.
  Matrix kernel_basis() const {
    Matrix red = *this;
    std::vector<std::size_t> pivots = red.reduce();
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    Matrix ker(field_, 0, cols_);
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      Row v(cols_, field_.zero());
      v[f] = field_.one();
      for (std::size_t i = 0; i < pivots.size(); ++i)
        v[pivots[i]] = field_.neg(red.at(i, f));
      ker.append_row(v);
    }
    ker.reduce();
    return ker;
  }

  Matrix times(const Matrix& rhs) const {
    if (cols_ != rhs.rows_)
      throw InputError("matrix product shape mismatch");
    Matrix out(field_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        if (field_.is_zero(at(i, k))) continue;
        for (std::size_t j = 0; j < rhs.cols_; ++j)
          out.at(i, j) = field_.add(
              out.at(i, j), field_.mul(at(i, k), rhs.at(k, j)));
      }
    return out;
  }

  /// v * (this); v has rows() entries, output has cols() entries.
  Row apply_left(const Row& v) const {
    if (v.size() != rows_) throw InputError("vector-matrix shape mismatch");
    Row out(cols_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i) {
      if (field_.is_zero(v[i])) continue;
      for (std::size_t j = 0; j < cols_; ++j)
        out[j] = field_.add(out[j], field_.mul(v[i], at(i, j)));
    }
    return out;
  }

  Matrix inverse() const {
    if (rows_ != cols_) throw InputError("only square matrices invert");
    Matrix aug(field_, rows_, 2 * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, cols_ + i) = field_.one();
    }
    std::vector<std::size_t> pivots = aug.reduce();
    // The identity block keeps the augmented rank at n; the left block is
    // invertible exactly when all pivots stay inside it.
    for (std::size_t i = 0; i < rows_; ++i)
      if (i >= pivots.size() || pivots[i] != i)
        throw InputError("matrix is singular");
    Matrix inv(field_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        inv.at(i, j) = aug.at(i, cols_ + j);
    return inv;
  }

  bool operator==(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!field_.eq(data_[i], other.data_[i])) return false;
    return true;
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < rows_; ++i) {
      out += '[';
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) out += ' ';
        out += field_.str(at(i, j));
      }
      out += "]\n";
    }
    return out;
  }

 private:
  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> data_;
};

}  // namespace minkmat

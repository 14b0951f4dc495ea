#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tdlc/errors.hpp"

namespace tdlc::homology {

using Integer = mpz_class;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw InputError("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& x : data_) {
      if (x != 0) return false;
    }
    return true;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
  }
  /// col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product dimension mismatch");
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    }
    return out;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Column-compressed sparse matrix with machine-integer entries; used for
/// boundary maps, whose entries are 0 and ±1.
class SparseIntMatrix {
public:
  using Entry = std::pair<std::uint32_t, std::int64_t>;  // (row, value)

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }
  const std::vector<Entry>& column(std::size_t j) const { return columns_[j]; }

  /// Entries must be pushed with increasing row within a column.
  void push(std::size_t row, std::size_t col, std::int64_t value) {
    if (row >= rows_ || col >= columns_.size()) throw InputError("sparse entry out of range");
    if (value != 0) columns_[col].emplace_back(static_cast<std::uint32_t>(row), value);
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  IntMatrix to_dense() const {
    IntMatrix m(rows_, cols());
    for (std::size_t j = 0; j < cols(); ++j) {
      for (auto [i, v] : columns_[j]) m(i, j) = static_cast<long>(v);
    }
    return m;
  }

  static SparseIntMatrix from_dense(const IntMatrix& m) {
    SparseIntMatrix s(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (m(i, j) == 0) continue;
        if (!m(i, j).fits_slong_p()) throw DomainError("entry too large for a sparse matrix");
        s.push(i, j, m(i, j).get_si());
      }
    }
    return s;
  }

  /// Keeps only the listed rows, renumbered in the given order.
  SparseIntMatrix select_rows(const std::vector<std::uint32_t>& keep) const {
    std::vector<std::int64_t> index(rows_, -1);
    for (std::size_t k = 0; k < keep.size(); ++k) index[keep[k]] = static_cast<std::int64_t>(k);
    SparseIntMatrix out(keep.size(), cols());
    for (std::size_t j = 0; j < cols(); ++j) {
      for (auto [i, v] : columns_[j]) {
        if (index[i] >= 0) out.columns_[j].emplace_back(static_cast<std::uint32_t>(index[i]), v);
      }
      std::sort(out.columns_[j].begin(), out.columns_[j].end());
    }
    return out;
  }

private:
  std::size_t rows_ = 0;
  std::vector<std::vector<Entry>> columns_;
};

inline std::string to_string(const Integer& x) { return x.get_str(); }

}  // namespace tdlc::homology

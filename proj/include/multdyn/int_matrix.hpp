#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"

namespace multdyn {

using IntVector = std::vector<BigInt>;

/// Dense rectangular matrix of exact integers, row-major.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      detail::require(r.size() == cols_, "IntegerMatrix: ragged rows");
      for (long v : r) data_.emplace_back(v);
    }
  }
  static IntegerMatrix from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols) {
    IntegerMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      detail::require(rows[i].size() == cols, "IntegerMatrix: ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  /// Matrix built from a subset of rows, in the given order.
  IntegerMatrix select_rows(const std::vector<std::size_t>& idx) const {
    IntegerMatrix m(idx.size(), cols_);
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t j = 0; j < cols_; ++j) m(r, j) = (*this)(idx[r], j);
    return m;
  }

  /// k * M as a row vector.
  IntVector left_multiply(const IntVector& k) const {
    detail::require(k.size() == rows_, "left_multiply: length mismatch");
    IntVector out(cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      if (sgn(k[i]) != 0)
        for (std::size_t j = 0; j < cols_; ++j) out[j] += k[i] * (*this)(i, j);
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

inline bool is_zero_vector(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return sgn(x) == 0; });
}

/// Row Hermite normal form of the lattice spanned by `basis` (all vectors of
/// equal length): pivots strictly move right, each pivot positive, entries
/// above a pivot reduced into [0, pivot). Zero rows are dropped.
inline std::vector<IntVector> hermite_normal_form(std::vector<IntVector> basis) {
  if (basis.empty()) return {};
  const std::size_t n = basis.front().size();
  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < n && pivot_row < basis.size(); ++c) {
    // Euclid on column c among rows pivot_row..end
    while (true) {
      std::size_t best = basis.size();
      for (std::size_t r = pivot_row; r < basis.size(); ++r)
        if (sgn(basis[r][c]) != 0 &&
            (best == basis.size() || mpz_cmpabs(basis[r][c].get_mpz_t(), basis[best][c].get_mpz_t()) < 0))
          best = r;
      if (best == basis.size()) break;
      std::swap(basis[pivot_row], basis[best]);
      bool done = true;
      for (std::size_t r = pivot_row + 1; r < basis.size(); ++r) {
        if (sgn(basis[r][c]) == 0) continue;
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), basis[r][c].get_mpz_t(), basis[pivot_row][c].get_mpz_t());
        for (std::size_t j = c; j < n; ++j) basis[r][j] -= q * basis[pivot_row][j];
        if (sgn(basis[r][c]) != 0) done = false;
      }
      if (done) break;
    }
    if (sgn(basis[pivot_row][c]) == 0) continue;
    if (sgn(basis[pivot_row][c]) < 0)
      for (std::size_t j = c; j < n; ++j) basis[pivot_row][j] = -basis[pivot_row][j];
    for (std::size_t r = 0; r < pivot_row; ++r) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), basis[r][c].get_mpz_t(), basis[pivot_row][c].get_mpz_t());
      if (sgn(q) != 0)
        for (std::size_t j = c; j < n; ++j) basis[r][j] -= q * basis[pivot_row][j];
    }
    pivot_cols.push_back(c);
    ++pivot_row;
  }
  basis.resize(pivot_row);
  return basis;
}

/// Basis of the integer lattice {k : k * M = 0}, in Hermite normal form.
/// Empty iff the rows of M are linearly independent.
///
/// Unimodular row elimination on [M | I]; rows whose M-part vanishes carry
/// the transformation rows that span the kernel.
inline std::vector<IntVector> left_kernel(const IntegerMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<IntVector> aug(rows, IntVector(cols + rows));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug[i][j] = m(i, j);
    aug[i][cols + i] = 1;
  }
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    while (true) {
      std::size_t best = rows;
      for (std::size_t r = pivot_row; r < rows; ++r)
        if (sgn(aug[r][c]) != 0 && (best == rows || mpz_cmpabs(aug[r][c].get_mpz_t(), aug[best][c].get_mpz_t()) < 0)) best = r;
      if (best == rows) break;
      std::swap(aug[pivot_row], aug[best]);
      bool done = true;
      for (std::size_t r = pivot_row + 1; r < rows; ++r) {
        if (sgn(aug[r][c]) == 0) continue;
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), aug[r][c].get_mpz_t(), aug[pivot_row][c].get_mpz_t());
        for (std::size_t j = c; j < cols + rows; ++j) aug[r][j] -= q * aug[pivot_row][j];
        if (sgn(aug[r][c]) != 0) done = false;
      }
      if (done) break;
    }
    if (sgn(aug[pivot_row][c]) != 0) ++pivot_row;
  }
  std::vector<IntVector> kernel;
  for (std::size_t r = pivot_row; r < rows; ++r)
    kernel.emplace_back(aug[r].begin() + static_cast<std::ptrdiff_t>(cols), aug[r].end());
  auto hnf = hermite_normal_form(std::move(kernel));
  for (const auto& k : hnf)
    detail::ensure(is_zero_vector(m.left_multiply(k)), "left_kernel: vector not in kernel");
  return hnf;
}

/// Whether v lies in the lattice spanned by an HNF basis.
inline bool lattice_contains(const std::vector<IntVector>& hnf, IntVector v) {
  for (const auto& row : hnf) {
    std::size_t c = 0;
    while (c < row.size() && sgn(row[c]) == 0) ++c;
    if (c == row.size()) continue;
    BigInt q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v[c].get_mpz_t(), row[c].get_mpz_t());
    if (sgn(r) != 0) return false;
    for (std::size_t j = c; j < v.size(); ++j) v[j] -= q * row[j];
  }
  return is_zero_vector(v);
}

}  // namespace multdyn

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace splinemod {

using Integer = mpz_class;

/// Dense matrix of arbitrary-precision integers. Dimensions are fixed at
/// construction; entries are exact.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const std::vector<Integer>& d);
  /// Builds a matrix whose columns are the given vectors (all of length rows).
  static IntMatrix from_columns(std::size_t rows, const std::vector<std::vector<std::int64_t>>& cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Integer> column(std::size_t c) const;
  IntMatrix columns(std::size_t first, std::size_t count) const;
  IntMatrix rows_range(std::size_t first, std::size_t count) const;
  IntMatrix transposed() const;

  bool is_zero() const;
  bool is_lower_triangular() const;

  // Elementary operations; all unimodular.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// (col a, col b) <- (s*a + t*b, u*a + v*b); caller guarantees sv - tu = +-1.
  void combine_cols(std::size_t a, std::size_t b, const Integer& s, const Integer& t, const Integer& u,
                    const Integer& v);
  void combine_rows(std::size_t a, std::size_t b, const Integer& s, const Integer& t, const Integer& u,
                    const Integer& v);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// Determinant by fraction-free Bareiss elimination. Requires a square matrix.
Integer determinant(const IntMatrix& a);

}  // namespace splinemod

#pragma once

#include "splinemod/int_matrix.hpp"

#include <cstddef>
#include <vector>

namespace splinemod {

/// Column-style Hermite normal form: H = A * U with U unimodular.
///
/// Rows are processed top to bottom. Each pivot is positive, the pivot of
/// column k sits strictly below the pivot of column k-1, and every entry in a
/// pivot row to the left of the pivot lies in [0, pivot). For a square matrix
/// of full rank H is lower triangular. Columns past `rank` are zero and the
/// matching columns of U span the integer kernel of A.
struct HnfResult {
  IntMatrix h;
  IntMatrix u;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
};

HnfResult hnf(const IntMatrix& a);

/// Smith normal form: U * A * V = diag(d), U and V unimodular.
/// d has min(rows, cols) entries; nonzero entries form a divisibility chain
/// and zeros trail. u_inverse is U^{-1}, tracked alongside U.
struct SnfResult {
  std::vector<Integer> d;
  IntMatrix u;
  IntMatrix v;
  IntMatrix u_inverse;
};

SnfResult snf(const IntMatrix& a);

/// True when the column lattices of a and b coincide (compared via HNF).
bool same_column_lattice(const IntMatrix& a, const IntMatrix& b);

}  // namespace splinemod

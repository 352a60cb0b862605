#include "splinemod/normal_form.hpp"

#include "splinemod/number_theory.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace splinemod {

HnfResult hnf(const IntMatrix& a) {
  HnfResult out{a, IntMatrix::identity(a.cols()), 0, {}};
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  const std::size_t cols = a.cols();
  std::size_t k = 0;

  for (std::size_t i = 0; i < a.rows() && k < cols; ++i) {
    for (std::size_t j = k + 1; j < cols; ++j) {
      if (sgn(h(i, j)) == 0) continue;
      const Integer x = h(i, k);
      const Integer y = h(i, j);
      const auto [g, s, t] = xgcd(x, y);
      const Integer mu = -y / g;
      const Integer nu = x / g;
      h.combine_cols(k, j, s, t, mu, nu);
      u.combine_cols(k, j, s, t, mu, nu);
    }
    if (sgn(h(i, k)) == 0) continue;
    if (sgn(h(i, k)) < 0) {
      h.negate_col(k);
      u.negate_col(k);
    }
    for (std::size_t j = 0; j < k; ++j) {
      const Integer q = floor_div(h(i, j), h(i, k));
      if (sgn(q) == 0) continue;
      h.add_col_multiple(j, k, -q);
      u.add_col_multiple(j, k, -q);
    }
    out.pivot_rows.push_back(i);
    ++k;
  }
  out.rank = k;
  return out;
}

namespace {

struct Position {
  std::size_t row;
  std::size_t col;
};

// Minimal |entry| over the trailing submatrix; ties go to the first entry in
// row-major order.
std::optional<Position> min_abs_entry(const IntMatrix& d, std::size_t t) {
  std::optional<Position> best;
  Integer best_abs;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (sgn(d(i, j)) == 0) continue;
      Integer v = abs(d(i, j));
      if (!best || v < best_abs) {
        best = Position{i, j};
        best_abs = std::move(v);
      }
    }
  return best;
}

class SmithReducer {
 public:
  explicit SmithReducer(const IntMatrix& a)
      : d_(a), u_(IntMatrix::identity(a.rows())), uinv_(IntMatrix::identity(a.rows())),
        v_(IntMatrix::identity(a.cols())) {}

  SnfResult run() {
    const std::size_t steps = std::min(d_.rows(), d_.cols());
    std::vector<Integer> diag(steps);
    for (std::size_t t = 0; t < steps; ++t) {
      if (!reduce_pivot(t)) break;
      if (sgn(d_(t, t)) < 0) negate_row(t);
      diag[t] = d_(t, t);
    }
    return SnfResult{std::move(diag), std::move(u_), std::move(v_), std::move(uinv_)};
  }

 private:
  bool reduce_pivot(std::size_t t) {
    for (;;) {
      const auto pos = min_abs_entry(d_, t);
      if (!pos) return false;
      swap_rows(t, pos->row);
      swap_cols(t, pos->col);

      bool clean = true;
      for (std::size_t i = t + 1; i < d_.rows(); ++i) {
        if (sgn(d_(i, t)) == 0) continue;
        add_row(i, t, -floor_div(d_(i, t), d_(t, t)));
        if (sgn(d_(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d_.cols(); ++j) {
        if (sgn(d_(t, j)) == 0) continue;
        add_col(j, t, -floor_div(d_(t, j), d_(t, t)));
        if (sgn(d_(t, j)) != 0) clean = false;
      }
      if (!clean) continue;

      if (const auto bad = first_non_multiple(t)) {
        add_row(t, *bad, Integer(1));
        continue;
      }
      return true;
    }
  }

  std::optional<std::size_t> first_non_multiple(std::size_t t) const {
    for (std::size_t i = t + 1; i < d_.rows(); ++i)
      for (std::size_t j = t + 1; j < d_.cols(); ++j)
        if (!mpz_divisible_p(d_(i, j).get_mpz_t(), d_(t, t).get_mpz_t())) return i;
    return std::nullopt;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    d_.swap_rows(a, b);
    u_.swap_rows(a, b);
    uinv_.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    d_.swap_cols(a, b);
    v_.swap_cols(a, b);
  }
  void negate_row(std::size_t r) {
    d_.negate_row(r);
    u_.negate_row(r);
    uinv_.negate_col(r);
  }
  // row dst += f * row src
  void add_row(std::size_t dst, std::size_t src, const Integer& f) {
    d_.add_row_multiple(dst, src, f);
    u_.add_row_multiple(dst, src, f);
    uinv_.add_col_multiple(src, dst, -f);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& f) {
    d_.add_col_multiple(dst, src, f);
    v_.add_col_multiple(dst, src, f);
  }

  IntMatrix d_;
  IntMatrix u_;
  IntMatrix uinv_;
  IntMatrix v_;
};

}  // namespace

SnfResult snf(const IntMatrix& a) { return SmithReducer(a).run(); }

bool same_column_lattice(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) return false;
  const HnfResult ha = hnf(a);
  const HnfResult hb = hnf(b);
  return ha.rank == hb.rank && ha.h.columns(0, ha.rank) == hb.h.columns(0, hb.rank);
}

}  // namespace splinemod

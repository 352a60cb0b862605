#pragma once

#include "splinemod/graph.hpp"
#include "splinemod/int_matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace splinemod {

/// Columns span the integer spline lattice L. Column j is zero above row j
/// (flow-up shape) whenever L has full rank, which is always the case for
/// m >= 1. In integer mode L may be of lower rank; columns then follow the
/// pivot rows listed in `pivot_rows`.
struct LatticeBasis {
  IntMatrix b;
  std::int64_t modulus = 0;
  std::vector<std::size_t> pivot_rows;

  std::size_t size() const noexcept { return b.cols(); }
  std::vector<std::int64_t> column(std::size_t j) const;
  bool contains(const std::vector<Integer>& x) const;
};

struct SplineModule {
  std::int64_t modulus = 0;
  /// Ascending divisibility chain, every entry > 1. Empty in integer mode.
  std::vector<std::int64_t> invariant_factors;
  /// Full SNF diagonal, trivial 1s included.
  std::vector<std::int64_t> raw_factors;
  /// mgs[i] has additive order invariant_factors[i]. In integer mode a Z-basis.
  std::vector<Spline> mgs;
  std::vector<Spline> flow_up;

  bool integer_mode() const noexcept { return modulus == 0; }
  std::size_t rank() const noexcept { return integer_mode() ? mgs.size() : invariant_factors.size(); }
  /// |R|, i.e. the product of the invariant factors (0 when infinite).
  Integer order() const;
};

LatticeBasis integer_lattice(const EdgeLabeledGraph& g);

/// Basis columns reduced mod m, zero reductions dropped.
std::vector<Spline> flow_up_generators(const EdgeLabeledGraph& g);

/// SNF of m * B^{-1}. Computed on g exactly as given; throws Error(IntegerMode)
/// when m = 0.
SplineModule invariant_factors(const EdgeLabeledGraph& g);

/// Full computation: normalizes, solves, pulls the generators back to the
/// original vertex set. Handles integer mode (basis only).
struct Solution {
  SplineModule module;
  NormalizationReport report;
};
Solution solve(const EdgeLabeledGraph& g);

std::size_t rank(const EdgeLabeledGraph& g);

/// A minimum generating set whose first element is the trivial spline; the
/// remaining generators come from the quotient by the trivial summand. Orders
/// are returned alongside. Requires m >= 2 and n >= 1.
struct Presentation {
  std::vector<Spline> generators;
  std::vector<std::int64_t> orders;
};
Presentation trivial_first_presentation(const EdgeLabeledGraph& g);

/// True iff the given splines generate R_G (compared as lattices over Z,
/// with mZ^n adjoined).
bool generates_module(const EdgeLabeledGraph& g, const std::vector<Spline>& generators);

/// True iff both sets generate the same submodule of (Z/mZ)^n.
bool same_span(const std::vector<Spline>& a, const std::vector<Spline>& b, std::size_t n, std::int64_t modulus);

bool module_isomorphic(const SplineModule& a, const SplineModule& b);

struct ExtensionAnalysis {
  std::string new_vertex;
  /// lcm of the incident ideal generators (a divisor of m; 1 if isolated).
  std::int64_t n_lcm = 1;
  /// m / gcd(N, m); nullopt means infinite (integer mode, N != 0).
  std::optional<std::int64_t> kernel_order;
  bool pi_surjective = true;
  /// A generator of R_G with no lift when pi is not surjective.
  std::optional<Spline> unlifted;
};

/// g_plus must restrict to g (matched by vertex name) after deleting v;
/// otherwise Error(NotAnExtension).
ExtensionAnalysis extension_analysis(const EdgeLabeledGraph& g, const EdgeLabeledGraph& g_plus,
                                     const std::string& v);

}  // namespace splinemod

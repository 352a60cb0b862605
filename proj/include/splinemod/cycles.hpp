#pragma once

#include "splinemod/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace splinemod {

/// A cycle read off a graph: cycle vertex i is original vertex order[i];
/// labels[i] is the ideal generator on the edge from cycle vertex i to
/// cycle vertex i+1 (the last one closes the cycle).
struct CycleInstance {
  std::int64_t modulus = 0;
  std::vector<std::size_t> order;
  std::vector<std::int64_t> labels;

  std::size_t size() const noexcept { return order.size(); }

  /// Walks the cycle from vertex 0 towards its smaller-indexed neighbour.
  /// Throws Error(NotACycle) unless g is a simple cycle on n >= 3 vertices.
  static CycleInstance from_graph(const EdgeLabeledGraph& g);

  /// Cycle vertex 1 becomes old cycle vertex r+1, i.e. labels shift left by r.
  CycleInstance rotated(std::size_t r) const;
  /// A spline indexed by cycle position, re-indexed by original vertex.
  Spline to_original(const Spline& s) const;
};

enum class Provenance { SingleLabel, PowerLabel, TwoLabel, StructureTheorem, AlgorithmMerge, Engine };

std::string_view to_string(Provenance p) noexcept;

struct GeneratingSet {
  /// Indexed by original vertex; the trivial spline comes first.
  std::vector<Spline> splines;
  bool minimum = false;
  Provenance provenance = Provenance::Engine;
  /// Rotation applied to meet the theorem's ordering hypothesis.
  std::size_t rotation = 0;
};

enum class RotationPolicy { Automatic, Strict };

/// Connected graph whose edges all carry the same ideal: the trivial spline
/// plus a * e_k for every vertex but the first. Zero generators are dropped.
GeneratingSet single_label_mgs(const EdgeLabeledGraph& g);

/// Smallest a | m, 1 < a < m, with every label equal to gcd(a^k, m) for some
/// k >= 0 (k = 0 gives a unit label, large k may give 0).
std::optional<std::int64_t> power_family_base(const std::vector<std::int64_t>& labels, std::int64_t m);

/// Labels all powers of one zero divisor. Rotates so the last label is the
/// smallest power, then emits the trivial spline and, for i < n, the label
/// l_i on cycle vertices i+1..n. Strict policy throws RotationRequired
/// instead of rotating.
GeneratingSet power_label_cycle_gens(const CycleInstance& c, RotationPolicy policy = RotationPolicy::Automatic);

/// Exactly two labels m1 != m2 with lcm(m1, m2) = m. Rotates so the last two
/// labels differ (m1 last, m2 before it) and emits the n - 1 splines of the
/// two-label closed form. Error(PreconditionViolated) when inapplicable.
GeneratingSet two_label_cycle_gens(const CycleInstance& c);

/// Per prime power q of m: reduce the cycle mod q, take the power-label set,
/// lift through the CRT idempotent. Union with the trivial spline.
GeneratingSet structure_theorem_gens(const CycleInstance& c);

/// Finest factorization m = c_1 ... c_r into coprime prime-power products such
/// that every order divides one c_i.
std::vector<std::int64_t> coprime_order_split(const std::vector<std::int64_t>& orders, std::int64_t m);

/// Merge step: splines grouped by which factor their order divides, each
/// group sorted by leading vertex descending, j-th members summed, leftovers
/// kept. The trivial spline stays first. Error(HypothesisViolated) when some
/// order divides none of the factors.
GeneratingSet mgs_merge(const GeneratingSet& b, const std::vector<std::int64_t>& factors);

struct CycleReport {
  CycleInstance instance;
  Provenance path = Provenance::Engine;
  /// Closed-form set before merging (empty on the engine path).
  GeneratingSet closed_form;
  /// Final minimum generating set.
  GeneratingSet result;
  std::vector<std::int64_t> merge_factors;
  std::size_t engine_rank = 0;
  bool generates = false;
  std::string note;
};

/// Tries single label, power family, two labels, structure theorem in that
/// order, merges when needed and cross-checks against the engine. Falls back
/// to the engine (with a note) when no closed form applies.
CycleReport classify_cycle(const EdgeLabeledGraph& g);

}  // namespace splinemod

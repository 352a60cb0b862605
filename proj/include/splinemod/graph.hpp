#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace splinemod {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  /// Canonical residue in [0, m); in integer mode (m = 0) a nonnegative integer.
  std::int64_t label = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A vertex labeling together with its modulus. Entries are residues in
/// [0, m), or plain integers when m = 0.
struct Spline {
  std::vector<std::int64_t> values;
  std::int64_t modulus = 0;

  std::size_t size() const noexcept { return values.size(); }
  std::int64_t operator[](std::size_t i) const { return values[i]; }

  static Spline trivial(std::size_t n, std::int64_t modulus);
  static Spline zero(std::size_t n, std::int64_t modulus);

  bool is_zero() const;
  /// Additive order m / gcd(m, entries); 0 means infinite (integer mode).
  std::int64_t order() const;
  /// Index of the first nonzero entry, or size() for the zero spline.
  std::size_t leading_vertex() const;

  Spline operator+(const Spline& other) const;
  Spline scaled(std::int64_t factor) const;
  /// Reduction into Z/dZ; d must divide the modulus (any d when m = 0).
  Spline reduced(std::int64_t d) const;

  friend bool operator==(const Spline&, const Spline&) = default;
  friend auto operator<=>(const Spline& a, const Spline& b) { return a.values <=> b.values; }
};

std::ostream& operator<<(std::ostream& os, const Spline& s);

/// An edge-labeled graph over Z/mZ (or over Z when m = 0). Vertex order is
/// the flow-up order, v1 first. Immutable once constructed.
class EdgeLabeledGraph {
 public:
  /// Validates and canonicalizes: labels are reduced mod m, self-loops and
  /// out-of-range endpoints are rejected. Parallel edges are kept.
  EdgeLabeledGraph(std::int64_t modulus, std::vector<std::string> names, std::vector<Edge> edges);

  std::int64_t modulus() const noexcept { return modulus_; }
  bool integer_mode() const noexcept { return modulus_ == 0; }
  std::size_t vertex_count() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Throws Error(UnknownVertex).
  std::size_t index_of(std::string_view name) const;

  /// gcd(label, m), with gcd(0, m) = m: the generator of the edge ideal that
  /// divides m. In integer mode the label itself.
  std::int64_t ideal_generator(const Edge& e) const;

  bool is_connected() const;
  std::vector<std::vector<std::size_t>> adjacency() const;

  /// Same graph with vertices listed in a new order; order[i] is the old
  /// index of new vertex i.
  EdgeLabeledGraph reordered(const std::vector<std::size_t>& order) const;
  EdgeLabeledGraph reordered_by_names(const std::vector<std::string>& names) const;

  friend bool operator==(const EdgeLabeledGraph&, const EdgeLabeledGraph&) = default;

 private:
  std::int64_t modulus_;
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
};

struct CollapsedEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  std::int64_t surviving_label = 0;
};

struct NormalizationReport {
  /// original vertex index -> normalized vertex index
  std::vector<std::size_t> vertex_merge_map;
  std::vector<Edge> dropped_unit_edges;
  std::vector<CollapsedEdge> collapsed_parallel_edges;

  bool is_identity() const;
  /// Spline on the normalized graph -> spline on the original vertex set.
  Spline pull_back(const Spline& s) const;
};

struct Normalized {
  EdgeLabeledGraph graph;
  NormalizationReport report;
};

/// Merges vertices joined by 0-labels, collapses parallel edges to the lcm of
/// their ideal generators, drops unit edges and replaces each label by its
/// ideal generator. The result has the same splines up to the merge map.
Normalized normalize(const EdgeLabeledGraph& g);

/// True iff s satisfies every edge condition of g. Throws
/// Error(LengthMismatch) on a size mismatch.
bool spline_check(const EdgeLabeledGraph& g, const Spline& s);

/// Parses the line-oriented graph format.
EdgeLabeledGraph parse_graph(std::string_view text);
/// Parses the JSON mirror {"mod": m, "vertices": [...], "edges": [[u, v, l], ...]}.
EdgeLabeledGraph parse_graph_json(std::string_view text);

std::string serialize_graph(const EdgeLabeledGraph& g);
std::string serialize_graph_json(const EdgeLabeledGraph& g);

}  // namespace splinemod

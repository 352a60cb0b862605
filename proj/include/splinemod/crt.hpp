#pragma once

#include "splinemod/engine.hpp"
#include "splinemod/graph.hpp"

#include <cstdint>
#include <vector>

namespace splinemod {

/// Same vertices and edges, labels taken mod d, modulus d. d must divide m
/// (any d >= 1 in integer mode); otherwise Error(NotADivisor).
EdgeLabeledGraph reduce_graph(const EdgeLabeledGraph& g, std::int64_t d);

/// x mod m with x = 1 mod q and x = 0 mod m/q.
std::int64_t crt_idempotent(std::int64_t q, std::int64_t m);

struct Component {
  std::uint64_t prime = 0;
  unsigned exponent = 0;
  std::int64_t q = 0;
  EdgeLabeledGraph reduced;
  Normalized normalized;
  /// Solved on the normalized graph; generators pulled back to the original
  /// vertex set, entries mod q.
  SplineModule module;
};

struct Decomposition {
  std::vector<Component> components;
  SplineModule recombined;
};

/// One component per prime power of m (m >= 2), then recombine().
Decomposition decompose(const EdgeLabeledGraph& g);

/// Pads each component's generators (sorted by descending order) with zeros,
/// combines the j-th generators entrywise by CRT and multiplies their orders.
/// Throws Error(InternalInconsistency) if a combined vector is not a spline.
SplineModule recombine(const EdgeLabeledGraph& g, const std::vector<Component>& components);

}  // namespace splinemod

#pragma once

#include "splinemod/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace splinemod {

enum class StepKind { Base, RankIncreasing, RankPreserving };

std::string_view to_string(StepKind k) noexcept;

struct ConstructionStep {
  StepKind kind = StepKind::Base;
  /// Vertex added by this step (for Base, the last base vertex).
  std::size_t vertex = 0;
  std::vector<Edge> edges;
};

struct ConstructionRecipe {
  std::size_t target_rank = 0;
  std::size_t n = 0;
  std::int64_t m = 0;
  /// Coprime split m = n1 * n2; n1 is the smallest prime power of m.
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  /// Three-prime triangle base: the factors (P, Q, R), otherwise empty.
  std::vector<std::int64_t> triangle_factors;
  std::vector<ConstructionStep> log;
};

struct Construction {
  EdgeLabeledGraph graph;
  ConstructionRecipe recipe;
};

/// Rank k graph on n vertices: an edge labeled n1, then k - 2 vertices joined
/// to the two newest vertices by n1-edges, then n - k vertices joined to the
/// newest by an n2-edge and to the one before by an n1-edge.
/// Error(InfeasibleParameters) for prime-power m, n < 2 or k outside [2, n].
Construction build_rank_k(std::size_t n, std::int64_t m, std::size_t k);

/// Rank 1 graph on n vertices. Base is a triangle labeled PQ, QR, RP when m
/// has three or more primes, else K4 with a p/q labeling (n >= 4). Each later
/// vertex is joined to the newest vertex by n1 and the one before by n2.
Construction build_rank_1(std::size_t n, std::int64_t m);

/// For a 3-vertex graph whose modulus has exactly two prime factors: a
/// spline d * e_v where d, the lcm of the ideals at v, is not 0 mod m. Such a
/// vertex always exists when no label is 0; nullopt otherwise.
/// Error(PreconditionViolated) on the wrong vertex count or modulus.
std::optional<Spline> sharpness_check(const EdgeLabeledGraph& g);

}  // namespace splinemod

#include "splinemod/constructions.hpp"

#include "splinemod/error.hpp"
#include "splinemod/number_theory.hpp"

#include <algorithm>

namespace splinemod {

namespace {

std::vector<std::string> vertex_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i + 1));
  return names;
}

std::vector<std::int64_t> prime_powers(std::int64_t m) {
  std::vector<std::int64_t> out;
  if (m < 2) return out;
  for (const auto& pp : factorize(static_cast<std::uint64_t>(m))) out.push_back(static_cast<std::int64_t>(pp.value()));
  std::sort(out.begin(), out.end());
  return out;
}

// new vertex v joined to v-1 (label near) and v-2 (label far)
ConstructionStep grow(StepKind kind, std::size_t v, std::int64_t near, std::int64_t far) {
  return {kind, v, {Edge{v, v - 1, near}, Edge{v, v - 2, far}}};
}

Construction finish(ConstructionRecipe recipe) {
  std::vector<Edge> edges;
  for (const auto& step : recipe.log) edges.insert(edges.end(), step.edges.begin(), step.edges.end());
  EdgeLabeledGraph g(recipe.m, vertex_names(recipe.n), std::move(edges));
  return {std::move(g), std::move(recipe)};
}

}  // namespace

std::string_view to_string(StepKind k) noexcept {
  switch (k) {
    case StepKind::Base: return "base";
    case StepKind::RankIncreasing: return "rank-increasing";
    case StepKind::RankPreserving: return "rank-preserving";
  }
  return "unknown";
}

Construction build_rank_k(std::size_t n, std::int64_t m, std::size_t k) {
  const auto pps = prime_powers(m);
  if (pps.size() < 2) throw Error(ErrorCode::InfeasibleParameters, "modulus needs at least two distinct primes");
  if (n < 2 || k < 2 || k > n)
    throw Error(ErrorCode::InfeasibleParameters, "rank " + std::to_string(k) + " is not reachable on " + std::to_string(n) + " vertices");
  ConstructionRecipe r;
  r.target_rank = k;
  r.n = n;
  r.m = m;
  r.n1 = pps.front();
  r.n2 = m / r.n1;
  r.log.push_back({StepKind::Base, 1, {Edge{0, 1, r.n1}}});
  std::size_t v = 2;
  // rank-increasing steps first so the two newest vertices stay n1-adjacent
  for (std::size_t i = 0; i + 2 < k; ++i, ++v) r.log.push_back(grow(StepKind::RankIncreasing, v, r.n1, r.n1));
  for (; v < n; ++v) r.log.push_back(grow(StepKind::RankPreserving, v, r.n2, r.n1));
  return finish(std::move(r));
}

Construction build_rank_1(std::size_t n, std::int64_t m) {
  const auto pps = prime_powers(m);
  const bool triangle = pps.size() >= 3 && n >= 3;
  if (!triangle && !(pps.size() >= 2 && n >= 4))
    throw Error(ErrorCode::InfeasibleParameters,
                "rank 1 needs three primes and n >= 3, or two primes and n >= 4");
  ConstructionRecipe r;
  r.target_rank = 1;
  r.n = n;
  r.m = m;
  r.n1 = pps.front();
  r.n2 = m / r.n1;
  std::size_t v;
  if (triangle) {
    const std::int64_t p = pps[0], q = pps[1], rest = m / (p * q);
    r.triangle_factors = {p, q, rest};
    r.log.push_back({StepKind::Base, 2, {Edge{0, 1, p * q}, Edge{1, 2, q * rest}, Edge{2, 0, rest * p}}});
    v = 3;
  } else {
    // p on the path v4 v3 v1 v2, q on the complementary path v3 v2 v4 v1
    const std::int64_t p = r.n1, q = r.n2;
    r.log.push_back({StepKind::Base, 3,
                     {Edge{3, 2, p}, Edge{2, 0, p}, Edge{0, 1, p}, Edge{0, 3, q}, Edge{3, 1, q}, Edge{1, 2, q}}});
    v = 4;
  }
  for (; v < n; ++v) r.log.push_back(grow(StepKind::RankPreserving, v, r.n1, r.n2));
  return finish(std::move(r));
}

std::optional<Spline> sharpness_check(const EdgeLabeledGraph& g) {
  const std::int64_t m = g.modulus();
  if (g.vertex_count() != 3) throw Error(ErrorCode::PreconditionViolated, "sharpness check needs three vertices");
  if (m < 2 || factorize(static_cast<std::uint64_t>(m)).size() != 2)
    throw Error(ErrorCode::PreconditionViolated, "sharpness check needs a modulus with exactly two primes");
  for (std::size_t v = 0; v < 3; ++v) {
    std::int64_t d = 1;
    for (const auto& e : g.edges())
      if (e.u == v || e.v == v) d = lcm64(d, g.ideal_generator(e));
    if (d % m == 0) continue;
    Spline s = Spline::zero(3, m);
    s.values[v] = d;
    return s;
  }
  return std::nullopt;
}

}  // namespace splinemod

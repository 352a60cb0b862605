#include "splinemod/crt.hpp"

#include "splinemod/error.hpp"
#include "splinemod/number_theory.hpp"

#include <algorithm>

namespace splinemod {

EdgeLabeledGraph reduce_graph(const EdgeLabeledGraph& g, std::int64_t d) {
  if (d < 1 || (!g.integer_mode() && g.modulus() % d != 0))
    throw Error(ErrorCode::NotADivisor, std::to_string(d) + " does not divide " + std::to_string(g.modulus()));
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) e.label = mod_floor(e.label, d);
  return EdgeLabeledGraph(d, g.names(), std::move(edges));
}

std::int64_t crt_idempotent(std::int64_t q, std::int64_t m) {
  const std::vector<Residue> parts{{1, Integer(static_cast<long>(q))}, {0, Integer(static_cast<long>(m / q))}};
  return crt_combine(parts).get_si();
}

Decomposition decompose(const EdgeLabeledGraph& g) {
  if (g.integer_mode()) throw Error(ErrorCode::IntegerMode, "decomposition needs a finite modulus");
  if (g.modulus() < 2) throw Error(ErrorCode::PreconditionViolated, "decomposition needs m >= 2");
  Decomposition out;
  for (const auto& pp : factorize(static_cast<std::uint64_t>(g.modulus()))) {
    const auto q = static_cast<std::int64_t>(pp.value());
    EdgeLabeledGraph reduced = reduce_graph(g, q);
    Normalized norm = normalize(reduced);
    SplineModule mod = invariant_factors(norm.graph);
    for (auto& s : mod.mgs) s = norm.report.pull_back(s);
    for (auto& s : mod.flow_up) s = norm.report.pull_back(s);
    out.components.push_back(Component{pp.prime, pp.exponent, q, std::move(reduced), std::move(norm), std::move(mod)});
  }
  out.recombined = recombine(g, out.components);
  return out;
}

SplineModule recombine(const EdgeLabeledGraph& g, const std::vector<Component>& components) {
  const std::int64_t m = g.modulus();
  const std::size_t n = g.vertex_count();

  std::size_t t = 0;
  std::vector<std::vector<std::pair<Spline, std::int64_t>>> lists;
  for (const auto& c : components) {
    std::vector<std::pair<Spline, std::int64_t>> gens;
    for (std::size_t i = 0; i < c.module.mgs.size(); ++i)
      gens.emplace_back(c.module.mgs[i], c.module.invariant_factors[i]);
    std::stable_sort(gens.begin(), gens.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    t = std::max(t, gens.size());
    lists.push_back(std::move(gens));
  }

  std::vector<std::pair<Spline, std::int64_t>> combined;
  for (std::size_t j = 0; j < t; ++j) {
    Spline s = Spline::zero(n, m);
    std::int64_t order = 1;
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<Residue> parts;
      for (std::size_t c = 0; c < components.size(); ++c) {
        const std::int64_t value = j < lists[c].size() ? lists[c][j].first.values[v] : 0;
        parts.push_back({Integer(static_cast<long>(value)), Integer(static_cast<long>(components[c].q))});
      }
      s.values[v] = crt_combine(parts).get_si();
    }
    for (std::size_t c = 0; c < components.size(); ++c)
      if (j < lists[c].size()) order *= lists[c][j].second;
    if (!spline_check(g, s) || s.order() != order)
      throw Error(ErrorCode::InternalInconsistency, "recombined generator " + std::to_string(j) + " is not a spline of the expected order");
    combined.emplace_back(std::move(s), order);
  }
  std::reverse(combined.begin(), combined.end());

  SplineModule out;
  out.modulus = m;
  out.raw_factors.assign(n - std::min(n, t), 1);
  for (std::size_t j = 0; j < combined.size(); ++j) {
    if (j > 0 && combined[j].second % combined[j - 1].second != 0)
      throw Error(ErrorCode::InternalInconsistency, "recombined orders do not form a divisibility chain");
    out.invariant_factors.push_back(combined[j].second);
    out.raw_factors.push_back(combined[j].second);
    out.mgs.push_back(std::move(combined[j].first));
  }
  for (const auto& c : components) {
    const std::int64_t e = crt_idempotent(c.q, m);
    for (const auto& f : c.module.flow_up) {
      Spline lifted{f.values, m};
      out.flow_up.push_back(lifted.scaled(e));
    }
  }
  return out;
}

}  // namespace splinemod

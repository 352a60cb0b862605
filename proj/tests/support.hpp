#pragma once

// Shared fixtures and a deliberately naive reference used only by tests.

#include "splinemod/graph.hpp"
#include "splinemod/number_theory.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef SPLINEMOD_DATA_DIR
#error "SPLINEMOD_DATA_DIR must be defined"
#endif

namespace testing_support {

using splinemod::EdgeLabeledGraph;
using splinemod::Spline;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string& name) { return std::string(SPLINEMOD_DATA_DIR) + "/graphs/" + name; }

inline EdgeLabeledGraph load(const std::string& name) { return splinemod::parse_graph(read_file(data_path(name))); }

inline Spline sp(std::vector<std::int64_t> v, std::int64_t m) { return Spline{std::move(v), m}; }

// All f in (Z/m)^n satisfying every edge, by plain nested counting.
inline std::vector<Spline> naive_splines(const EdgeLabeledGraph& g) {
  const std::int64_t m = g.modulus();
  const std::size_t n = g.vertex_count();
  std::vector<Spline> out;
  std::vector<std::int64_t> f(n, 0);
  for (;;) {
    bool ok = true;
    for (const auto& e : g.edges()) {
      std::int64_t gen = std::gcd(e.label, m);
      std::int64_t diff = ((f[e.u] - f[e.v]) % m + m) % m;
      if (diff % gen != 0) ok = false;
    }
    if (ok) out.push_back(Spline{f, m});
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++f[i] < m) break;
      f[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

// Invariant factors found by trying every divisor chain whose product is the
// group order and matching |G[d]| = prod gcd(d_i, d) for all d | m.
inline std::vector<std::int64_t> naive_factors(const std::vector<Spline>& group, std::int64_t m) {
  std::map<std::int64_t, std::int64_t> killed;  // d -> #{x : d x = 0}
  const auto divs = splinemod::divisors(static_cast<std::uint64_t>(m));
  for (auto d : divs) {
    std::int64_t c = 0;
    for (const auto& s : group)
      if (std::all_of(s.values.begin(), s.values.end(), [&](std::int64_t v) { return (v * static_cast<std::int64_t>(d)) % m == 0; }))
        ++c;
    killed[static_cast<std::int64_t>(d)] = c;
  }
  const std::int64_t total = static_cast<std::int64_t>(group.size());
  std::vector<std::int64_t> chain;
  std::vector<std::int64_t> found;
  bool done = false;
  std::function<void(std::int64_t, std::int64_t)> search = [&](std::int64_t remaining, std::int64_t last) {
    if (done) return;
    if (remaining == 1) {
      for (auto [d, c] : killed) {
        std::int64_t p = 1;
        for (auto x : chain) p *= std::gcd(x, d);
        if (p != c) return;
      }
      found = chain;
      done = true;
      return;
    }
    for (auto dd : divs) {
      const auto d = static_cast<std::int64_t>(dd);
      if (d < 2 || d % last != 0 || remaining % d != 0) continue;
      chain.push_back(d);
      search(remaining / d, d);
      chain.pop_back();
    }
  };
  search(total, 1);
  return found;
}

// Random graph with nonzero non-unit labels (when m allows it).
inline EdgeLabeledGraph random_graph(std::mt19937_64& rng, std::size_t n, std::int64_t m, double density,
                                     bool allow_any_label = false) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i + 1));
  std::vector<std::int64_t> labels;
  for (std::int64_t l = allow_any_label ? 0 : 1; l < m; ++l)
    if (allow_any_label || (std::gcd(l, m) != 1)) labels.push_back(l);
  if (labels.empty()) labels.push_back(0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<splinemod::Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (coin(rng) < density) edges.push_back({u, v, labels[rng() % labels.size()]});
  return EdgeLabeledGraph(m, names, edges);
}

}  // namespace testing_support

#include "splinemod/cycles.hpp"

#include "splinemod/crt.hpp"
#include "splinemod/engine.hpp"
#include "splinemod/error.hpp"
#include "splinemod/number_theory.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace splinemod {

namespace {

EdgeLabeledGraph cycle_graph(const CycleInstance& c) {
  const std::size_t n = c.size();
  std::vector<std::string> names(n);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) names[c.order[i]] = "v" + std::to_string(c.order[i] + 1);
  for (std::size_t i = 0; i < n; ++i) edges.push_back({c.order[i], c.order[(i + 1) % n], c.labels[i]});
  return EdgeLabeledGraph(c.modulus, std::move(names), std::move(edges));
}

// value on cycle positions [from, to), zero elsewhere
Spline run(std::size_t n, std::int64_t m, std::size_t from, std::size_t to, std::int64_t value) {
  Spline s = Spline::zero(n, m);
  for (std::size_t i = from; i < to; ++i) s.values[i] = mod_floor(value, m);
  return s;
}

void check_all(const CycleInstance& c, const GeneratingSet& set, const char* what) {
  const EdgeLabeledGraph g = cycle_graph(c);
  for (const auto& s : set.splines)
    if (!spline_check(g, s))
      throw Error(ErrorCode::InternalInconsistency, std::string(what) + " produced a vector that is not a spline");
}

}  // namespace

std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::SingleLabel: return "single-label";
    case Provenance::PowerLabel: return "power-label";
    case Provenance::TwoLabel: return "two-label";
    case Provenance::StructureTheorem: return "structure-theorem";
    case Provenance::AlgorithmMerge: return "merge";
    case Provenance::Engine: return "engine";
  }
  return "unknown";
}

// ---------------------------------------------------------------- instance

CycleInstance CycleInstance::from_graph(const EdgeLabeledGraph& g) {
  const std::size_t n = g.vertex_count();
  if (g.integer_mode()) throw Error(ErrorCode::IntegerMode, "cycle closed forms need a finite modulus");
  if (n < 3 || g.edges().size() != n) throw Error(ErrorCode::NotACycle, "a cycle needs n >= 3 vertices and n edges");
  const auto adj = g.adjacency();
  for (std::size_t v = 0; v < n; ++v)
    if (adj[v].size() != 2 || adj[v][0] == adj[v][1])
      throw Error(ErrorCode::NotACycle, "vertex '" + g.names()[v] + "' does not have two distinct neighbours");
  if (!g.is_connected()) throw Error(ErrorCode::NotACycle, "graph is a union of several cycles");

  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> label;
  for (const auto& e : g.edges()) label[{std::min(e.u, e.v), std::max(e.u, e.v)}] = g.ideal_generator(e);

  CycleInstance c;
  c.modulus = g.modulus();
  std::size_t prev = 0, cur = std::min(adj[0][0], adj[0][1]);
  c.order.push_back(0);
  while (cur != 0) {
    c.order.push_back(cur);
    const std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
    prev = cur;
    cur = next;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = c.order[i], b = c.order[(i + 1) % n];
    c.labels.push_back(label.at({std::min(a, b), std::max(a, b)}));
  }
  return c;
}

CycleInstance CycleInstance::rotated(std::size_t r) const {
  CycleInstance out{modulus, order, labels};
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    out.order[i] = order[(i + r) % n];
    out.labels[i] = labels[(i + r) % n];
  }
  return out;
}

Spline CycleInstance::to_original(const Spline& s) const {
  Spline out{std::vector<std::int64_t>(size()), s.modulus};
  for (std::size_t i = 0; i < size(); ++i) out.values[order[i]] = s.values[i];
  return out;
}

// ---------------------------------------------------------------- closed forms

GeneratingSet single_label_mgs(const EdgeLabeledGraph& g) {
  if (g.integer_mode()) throw Error(ErrorCode::IntegerMode, "single-label form needs a finite modulus");
  if (!g.is_connected()) throw Error(ErrorCode::NotConnected, "single-label form needs a connected graph");
  const std::int64_t m = g.modulus();
  const std::size_t n = g.vertex_count();
  std::optional<std::int64_t> a;
  for (const auto& e : g.edges()) {
    const auto gen = g.ideal_generator(e);
    if (a && *a != gen) throw Error(ErrorCode::NotSingleLabel, "edges carry different ideals");
    a = gen;
  }
  GeneratingSet out;
  out.provenance = Provenance::SingleLabel;
  out.minimum = true;
  out.splines.push_back(Spline::trivial(n, m));
  for (std::size_t k = 1; k < n; ++k) {
    Spline s = Spline::zero(n, m);
    s.values[k] = mod_floor(*a, m);
    if (!s.is_zero()) out.splines.push_back(std::move(s));
  }
  return out;
}

std::optional<std::int64_t> power_family_base(const std::vector<std::int64_t>& labels, std::int64_t m) {
  if (m < 2) return std::nullopt;
  for (auto d : divisors(static_cast<std::uint64_t>(m))) {
    const auto a = static_cast<std::int64_t>(d);
    if (a == 1) continue;
    std::set<std::int64_t> powers{1};
    std::int64_t g = 1;
    for (int k = 1; k <= 64; ++k) {
      g = gcd64(static_cast<std::int64_t>(static_cast<__int128>(g) * a % m), m);
      if (g == 0) g = m;
      if (!powers.insert(g).second) break;
    }
    if (std::all_of(labels.begin(), labels.end(), [&](std::int64_t l) { return powers.count(l % m == 0 ? m : l); }))
      return a;
  }
  return std::nullopt;
}

GeneratingSet power_label_cycle_gens(const CycleInstance& c, RotationPolicy policy) {
  const std::int64_t m = c.modulus;
  const std::size_t n = c.size();
  if (!power_family_base(c.labels, m)) throw Error(ErrorCode::NotPowerFamily, "labels are not powers of one zero divisor");
  const std::int64_t smallest = *std::min_element(c.labels.begin(), c.labels.end());
  std::size_t r = 0;
  while (c.labels[(n - 1 + r) % n] != smallest) ++r;
  if (r != 0 && policy == RotationPolicy::Strict) throw RotationRequired(r);
  const CycleInstance cc = c.rotated(r);

  GeneratingSet out;
  out.provenance = Provenance::PowerLabel;
  out.minimum = true;  // the values form a divisibility chain
  out.rotation = r;
  out.splines.push_back(Spline::trivial(n, m));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Spline s = run(n, m, i + 1, n, cc.labels[i]);
    if (!s.is_zero()) out.splines.push_back(cc.to_original(s));
  }
  check_all(c, out, "power-label form");
  return out;
}

GeneratingSet two_label_cycle_gens(const CycleInstance& c) {
  const std::int64_t m = c.modulus;
  const std::size_t n = c.size();
  std::set<std::int64_t> distinct(c.labels.begin(), c.labels.end());
  if (distinct.size() != 2) throw Error(ErrorCode::PreconditionViolated, "need exactly two distinct labels");
  const std::int64_t x = *distinct.begin(), y = *distinct.rbegin();
  if (x == 1 || y >= m) throw Error(ErrorCode::PreconditionViolated, "labels must be nonzero non-units");
  if (lcm64(x, y) != m) throw Error(ErrorCode::PreconditionViolated, "lcm of the two labels must be m");

  std::size_t r = 0;
  while (c.labels[(n - 2 + r) % n] == c.labels[(n - 1 + r) % n]) ++r;
  const CycleInstance cc = c.rotated(r);
  const std::int64_t m1 = cc.labels[n - 1], m2 = cc.labels[n - 2];

  GeneratingSet out;
  out.provenance = Provenance::TwoLabel;
  out.rotation = r;
  out.splines.push_back(Spline::trivial(n, m));
  for (std::size_t i = 0; i + 2 < n; ++i) {
    const std::int64_t l = cc.labels[i];
    Spline s = run(n, m, i + 1, n - 1, l);
    s.values[n - 1] = l == m2 ? 0 : m1;
    out.splines.push_back(cc.to_original(s));
  }
  check_all(c, out, "two-label form");
  return out;
}

GeneratingSet structure_theorem_gens(const CycleInstance& c) {
  const std::int64_t m = c.modulus;
  const std::size_t n = c.size();
  if (m < 2) throw Error(ErrorCode::PreconditionViolated, "structure theorem needs m >= 2");
  GeneratingSet out;
  out.provenance = Provenance::StructureTheorem;
  out.splines.push_back(Spline::trivial(n, m));
  for (const auto& pp : factorize(static_cast<std::uint64_t>(m))) {
    const auto q = static_cast<std::int64_t>(pp.value());
    CycleInstance cq{q, c.order, {}};
    for (auto l : c.labels) cq.labels.push_back(gcd64(l, q));
    const GeneratingSet part = power_label_cycle_gens(cq);
    const std::int64_t e = crt_idempotent(q, m);
    for (std::size_t i = 1; i < part.splines.size(); ++i)
      out.splines.push_back(Spline{part.splines[i].values, m}.scaled(e));
  }
  check_all(c, out, "structure theorem");
  return out;
}

// ---------------------------------------------------------------- merge

std::vector<std::int64_t> coprime_order_split(const std::vector<std::int64_t>& orders, std::int64_t m) {
  const Factorization f = factorize(static_cast<std::uint64_t>(m));
  std::vector<std::size_t> parent(f.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto o : orders) {
    std::optional<std::size_t> first;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (o % static_cast<std::int64_t>(f[i].prime) != 0) continue;
      if (first) parent[find(i)] = find(*first);
      else first = i;
    }
  }
  std::map<std::size_t, std::int64_t> groups;
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto [it, fresh] = groups.try_emplace(find(i), 1);
    it->second *= static_cast<std::int64_t>(f[i].value());
  }
  std::vector<std::int64_t> out;
  for (const auto& [root, factor] : groups) out.push_back(factor);
  std::sort(out.begin(), out.end());
  return out;
}

GeneratingSet mgs_merge(const GeneratingSet& b, const std::vector<std::int64_t>& factors) {
  if (b.splines.empty()) throw Error(ErrorCode::HypothesisViolated, "empty generating set");
  const std::size_t n = b.splines[0].size();
  const std::int64_t m = b.splines[0].modulus;
  if (b.splines[0] != Spline::trivial(n, m))
    throw Error(ErrorCode::HypothesisViolated, "first generator must be the trivial spline");

  std::vector<std::vector<Spline>> classes(factors.size());
  for (std::size_t i = 1; i < b.splines.size(); ++i) {
    const Spline& s = b.splines[i];
    const std::int64_t o = s.order();
    if (o == 1) continue;
    std::size_t k = 0;
    while (k < factors.size() && factors[k] % o != 0) ++k;
    if (k == factors.size())
      throw Error(ErrorCode::HypothesisViolated, "generator order " + std::to_string(o) + " divides no factor");
    classes[k].push_back(s);
  }
  std::size_t longest = 0;
  for (auto& cls : classes) {
    std::stable_sort(cls.begin(), cls.end(),
                     [](const Spline& x, const Spline& y) { return x.leading_vertex() > y.leading_vertex(); });
    longest = std::max(longest, cls.size());
  }

  GeneratingSet out;
  out.provenance = Provenance::AlgorithmMerge;
  out.minimum = true;
  out.rotation = b.rotation;
  out.splines.push_back(b.splines[0]);
  for (std::size_t j = 0; j < longest; ++j) {
    Spline sum = Spline::zero(n, m);
    for (const auto& cls : classes)
      if (j < cls.size()) sum = sum + cls[j];
    out.splines.push_back(std::move(sum));
  }
  return out;
}

// ---------------------------------------------------------------- dispatch

CycleReport classify_cycle(const EdgeLabeledGraph& g) {
  CycleReport rep;
  rep.instance = CycleInstance::from_graph(g);
  const std::int64_t m = g.modulus();
  const auto& labels = rep.instance.labels;
  rep.engine_rank = rank(g);

  auto merge_with = [&](const GeneratingSet& b, std::vector<std::int64_t> factors) {
    rep.closed_form = b;
    rep.merge_factors = std::move(factors);
    rep.result = mgs_merge(b, rep.merge_factors);
  };
  auto orders_of = [](const GeneratingSet& b) {
    std::vector<std::int64_t> o;
    for (std::size_t i = 1; i < b.splines.size(); ++i) o.push_back(b.splines[i].order());
    return o;
  };

  const bool single = std::all_of(labels.begin(), labels.end(), [&](std::int64_t l) { return l == labels[0]; });
  if (m < 2) {
    rep.path = Provenance::Engine;
    rep.note = "zero module";
  } else if (single) {
    rep.path = Provenance::SingleLabel;
    rep.closed_form = rep.result = single_label_mgs(g);
  } else if (power_family_base(labels, m)) {
    rep.path = Provenance::PowerLabel;
    rep.closed_form = rep.result = power_label_cycle_gens(rep.instance);
  } else {
    bool done = false;
    try {
      const GeneratingSet b = two_label_cycle_gens(rep.instance);
      rep.path = Provenance::TwoLabel;
      merge_with(b, coprime_order_split(orders_of(b), m));
      done = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PreconditionViolated) throw;
    }
    if (!done && factorize(static_cast<std::uint64_t>(m)).size() >= 2) {
      rep.path = Provenance::StructureTheorem;
      std::vector<std::int64_t> factors;
      for (const auto& pp : factorize(static_cast<std::uint64_t>(m))) factors.push_back(static_cast<std::int64_t>(pp.value()));
      merge_with(structure_theorem_gens(rep.instance), factors);
      done = true;
    }
    if (!done) {
      rep.path = Provenance::Engine;
      rep.note = "no closed form applies; engine result used";
    }
  }

  if (rep.path == Provenance::Engine) {
    rep.result.provenance = Provenance::Engine;
    rep.result.minimum = true;
    if (m >= 2) rep.result.splines = trivial_first_presentation(g).generators;
  }
  rep.generates = m < 2 || generates_module(g, rep.result.splines);
  if (rep.result.minimum && rep.result.splines.size() != rep.engine_rank && m >= 2)
    rep.note += (rep.note.empty() ? "" : "; ") + std::string("closed form size differs from engine rank");
  return rep;
}

}  // namespace splinemod

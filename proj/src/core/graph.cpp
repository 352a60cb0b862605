#include "splinemod/graph.hpp"

#include "splinemod/error.hpp"
#include "splinemod/number_theory.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <tuple>
#include <unordered_set>

namespace splinemod {

// ---------------------------------------------------------------- Spline

Spline Spline::trivial(std::size_t n, std::int64_t modulus) {
  return Spline{std::vector<std::int64_t>(n, modulus == 1 ? 0 : 1), modulus};
}

Spline Spline::zero(std::size_t n, std::int64_t modulus) {
  return Spline{std::vector<std::int64_t>(n, 0), modulus};
}

bool Spline::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](std::int64_t v) { return v == 0; });
}

std::int64_t Spline::order() const {
  if (modulus == 0) return is_zero() ? 1 : 0;
  std::int64_t g = modulus;
  for (auto v : values) g = gcd64(g, v);
  return modulus / g;
}

std::size_t Spline::leading_vertex() const {
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] != 0) return i;
  return values.size();
}

Spline Spline::operator+(const Spline& other) const {
  if (other.size() != size() || other.modulus != modulus)
    throw Error(ErrorCode::LengthMismatch, "adding splines of different shape");
  Spline out = *this;
  for (std::size_t i = 0; i < size(); ++i) {
    out.values[i] += other.values[i];
    if (modulus > 0) out.values[i] = mod_floor(out.values[i], modulus);
  }
  return out;
}

Spline Spline::scaled(std::int64_t factor) const {
  Spline out = *this;
  for (auto& v : out.values) {
    if (modulus > 0) {
      v = static_cast<std::int64_t>(static_cast<__int128>(v) * mod_floor(factor, modulus) % modulus);
    } else {
      v *= factor;
    }
  }
  return out;
}

Spline Spline::reduced(std::int64_t d) const {
  if (d <= 0 || (modulus > 0 && modulus % d != 0))
    throw Error(ErrorCode::NotADivisor, std::to_string(d) + " does not divide " + std::to_string(modulus));
  Spline out{values, d};
  for (auto& v : out.values) v = mod_floor(v, d);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Spline& s) {
  os << '(';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s.values[i];
  return os << ')';
}

// ---------------------------------------------------------------- graph

EdgeLabeledGraph::EdgeLabeledGraph(std::int64_t modulus, std::vector<std::string> names, std::vector<Edge> edges)
    : modulus_(modulus), names_(std::move(names)), edges_(std::move(edges)) {
  if (modulus_ < 0) throw Error(ErrorCode::InvalidModulus, "modulus must be >= 1 (or 0 for integer mode)");
  if (names_.empty()) throw Error(ErrorCode::PreconditionViolated, "graph needs at least one vertex");
  std::unordered_set<std::string> seen;
  for (const auto& n : names_)
    if (!seen.insert(n).second) throw Error(ErrorCode::PreconditionViolated, "duplicate vertex name '" + n + "'");
  for (auto& e : edges_) {
    if (e.u >= names_.size() || e.v >= names_.size())
      throw Error(ErrorCode::UnknownVertex, "edge endpoint out of range");
    if (e.u == e.v) throw Error(ErrorCode::SelfLoop, "self-loop at vertex '" + names_[e.u] + "'");
    e.label = modulus_ > 0 ? mod_floor(e.label, modulus_) : (e.label < 0 ? -e.label : e.label);
  }
}

std::size_t EdgeLabeledGraph::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw Error(ErrorCode::UnknownVertex, "unknown vertex '" + std::string(name) + "'");
}

std::int64_t EdgeLabeledGraph::ideal_generator(const Edge& e) const {
  if (modulus_ == 0) return e.label;
  return gcd64(e.label, modulus_);
}

std::vector<std::vector<std::size_t>> EdgeLabeledGraph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(vertex_count());
  for (const auto& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

bool EdgeLabeledGraph::is_connected() const {
  const auto adj = adjacency();
  std::vector<bool> seen(vertex_count(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const auto x = stack.back();
    stack.pop_back();
    for (auto y : adj[x])
      if (!seen[y]) {
        seen[y] = true;
        ++count;
        stack.push_back(y);
      }
  }
  return count == vertex_count();
}

EdgeLabeledGraph EdgeLabeledGraph::reordered(const std::vector<std::size_t>& order) const {
  if (order.size() != vertex_count())
    throw Error(ErrorCode::LengthMismatch, "vertex order must list every vertex exactly once");
  std::vector<std::size_t> new_index(vertex_count(), vertex_count());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] >= vertex_count() || new_index[order[i]] != vertex_count())
      throw Error(ErrorCode::PreconditionViolated, "vertex order is not a permutation");
    new_index[order[i]] = i;
  }
  std::vector<std::string> names;
  for (auto old : order) names.push_back(names_[old]);
  std::vector<Edge> edges;
  for (const auto& e : edges_) edges.push_back({new_index[e.u], new_index[e.v], e.label});
  return EdgeLabeledGraph(modulus_, std::move(names), std::move(edges));
}

EdgeLabeledGraph EdgeLabeledGraph::reordered_by_names(const std::vector<std::string>& names) const {
  std::vector<std::size_t> order;
  for (const auto& n : names) order.push_back(index_of(n));
  return reordered(order);
}

// ---------------------------------------------------------------- normalization

bool NormalizationReport::is_identity() const {
  for (std::size_t i = 0; i < vertex_merge_map.size(); ++i)
    if (vertex_merge_map[i] != i) return false;
  return dropped_unit_edges.empty() && collapsed_parallel_edges.empty();
}

Spline NormalizationReport::pull_back(const Spline& s) const {
  Spline out{std::vector<std::int64_t>(vertex_merge_map.size()), s.modulus};
  for (std::size_t i = 0; i < vertex_merge_map.size(); ++i) out.values[i] = s.values.at(vertex_merge_map[i]);
  return out;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    // smaller index stays representative
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

struct EdgeGroup {
  std::int64_t generator = 1;
  std::size_t members = 0;
};

}  // namespace

Normalized normalize(const EdgeLabeledGraph& g) {
  const std::int64_t m = g.modulus();
  const std::size_t n = g.vertex_count();
  auto is_zero_ideal = [m](std::int64_t gen) { return m > 0 ? gen % m == 0 : gen == 0; };
  auto combine = [m](std::int64_t a, std::int64_t b) {
    if (m == 0) return lcm64(a, b);
    const std::int64_t l = lcm64(a, b);  // both divide m, so l divides m
    return l;
  };

  DisjointSets sets(n);
  std::map<std::pair<std::size_t, std::size_t>, EdgeGroup> groups;
  for (;;) {
    groups.clear();
    for (const auto& e : g.edges()) {
      auto a = sets.find(e.u), b = sets.find(e.v);
      if (a == b) continue;
      if (b < a) std::swap(a, b);
      auto [it, fresh] = groups.try_emplace({a, b});
      const auto gen = g.ideal_generator(e);
      it->second.generator = fresh ? gen : combine(it->second.generator, gen);
      ++it->second.members;
    }
    bool merged = false;
    for (const auto& [pair, grp] : groups)
      if (is_zero_ideal(grp.generator)) merged |= sets.unite(pair.first, pair.second);
    if (!merged) break;
  }

  NormalizationReport report;
  std::vector<std::size_t> rep_index(n, n);
  std::vector<std::string> names;
  report.vertex_merge_map.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto r = sets.find(v);
    if (rep_index[r] == n) {
      rep_index[r] = names.size();
      names.push_back(g.names()[r]);
    }
    report.vertex_merge_map[v] = rep_index[r];
  }

  for (const auto& e : g.edges())
    if (sets.find(e.u) != sets.find(e.v) && g.ideal_generator(e) == 1) report.dropped_unit_edges.push_back(e);

  std::vector<Edge> edges;
  for (const auto& [pair, grp] : groups) {
    if (grp.generator == 1) continue;
    const Edge e{rep_index[pair.first], rep_index[pair.second], grp.generator};
    if (grp.members > 1) report.collapsed_parallel_edges.push_back({e.u, e.v, e.label});
    edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  return Normalized{EdgeLabeledGraph(m, std::move(names), std::move(edges)), std::move(report)};
}

bool spline_check(const EdgeLabeledGraph& g, const Spline& s) {
  if (s.size() != g.vertex_count())
    throw Error(ErrorCode::LengthMismatch, "spline has " + std::to_string(s.size()) + " entries, graph has " +
                                               std::to_string(g.vertex_count()) + " vertices");
  const std::int64_t m = g.modulus();
  for (const auto& e : g.edges()) {
    const std::int64_t gen = g.ideal_generator(e);
    if (m > 0) {
      const std::int64_t diff = mod_floor(s.values[e.u] - s.values[e.v], m);
      if (diff % gen != 0) return false;
    } else {
      const std::int64_t diff = s.values[e.u] - s.values[e.v];
      if (gen == 0 ? diff != 0 : diff % gen != 0) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- text format

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::int64_t parse_int(std::string_view tok, std::size_t line, const char* what) {
  std::int64_t v = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw ParseError(line, std::string("expected integer ") + what + ", got '" + std::string(tok) + "'");
  return v;
}

}  // namespace

EdgeLabeledGraph parse_graph(std::string_view text) {
  std::optional<std::int64_t> modulus;
  std::vector<std::string> names;
  bool have_vertices = false;
  std::vector<std::tuple<std::string, std::string, std::int64_t, std::size_t>> raw_edges;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;

    const auto keyword = tokens[0];
    if (!modulus) {
      if (keyword != "mod" || tokens.size() != 2) throw ParseError(line_no, "expected 'mod <m>' first");
      modulus = parse_int(tokens[1], line_no, "modulus");
      if (*modulus < 0) throw Error(ErrorCode::InvalidModulus, "line " + std::to_string(line_no) + ": modulus < 0");
    } else if (!have_vertices) {
      if (keyword != "vertices" || tokens.size() < 2)
        throw ParseError(line_no, "expected 'vertices <name> ...' after the modulus");
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        const std::string name(tokens[i]);
        if (std::find(names.begin(), names.end(), name) != names.end())
          throw ParseError(line_no, "duplicate vertex '" + name + "'");
        names.push_back(name);
      }
      have_vertices = true;
    } else {
      if (keyword != "edge" || tokens.size() != 4) throw ParseError(line_no, "expected 'edge <u> <v> <label>'");
      raw_edges.emplace_back(std::string(tokens[1]), std::string(tokens[2]), parse_int(tokens[3], line_no, "label"),
                             line_no);
    }
  }
  if (!modulus) throw ParseError(line_no, "missing 'mod' line");
  if (!have_vertices) throw ParseError(line_no, "missing 'vertices' line");

  std::vector<Edge> edges;
  for (const auto& [u, v, label, ln] : raw_edges) {
    auto find = [&](const std::string& name) {
      const auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end())
        throw Error(ErrorCode::UnknownVertex, "line " + std::to_string(ln) + ": undeclared vertex '" + name + "'");
      return static_cast<std::size_t>(it - names.begin());
    };
    const auto a = find(u), b = find(v);
    if (a == b) throw Error(ErrorCode::SelfLoop, "line " + std::to_string(ln) + ": self-loop at '" + u + "'");
    edges.push_back({a, b, label});
  }
  return EdgeLabeledGraph(*modulus, std::move(names), std::move(edges));
}

EdgeLabeledGraph parse_graph_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, e.what());
  }
  try {
    const auto m = doc.at("mod").get<std::int64_t>();
    if (m < 0) throw Error(ErrorCode::InvalidModulus, "modulus < 0");
    auto names = doc.at("vertices").get<std::vector<std::string>>();
    std::vector<Edge> edges;
    for (const auto& e : doc.value("edges", nlohmann::json::array())) {
      if (!e.is_array() || e.size() != 3) throw ParseError(0, "edge must be [u, v, label]");
      auto endpoint = [&](const nlohmann::json& x) -> std::size_t {
        if (x.is_number_unsigned() || x.is_number_integer()) {
          const auto idx = x.get<std::int64_t>();
          if (idx < 0 || static_cast<std::size_t>(idx) >= names.size())
            throw Error(ErrorCode::UnknownVertex, "vertex index " + std::to_string(idx) + " out of range");
          return static_cast<std::size_t>(idx);
        }
        const auto name = x.get<std::string>();
        const auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw Error(ErrorCode::UnknownVertex, "undeclared vertex '" + name + "'");
        return static_cast<std::size_t>(it - names.begin());
      };
      edges.push_back({endpoint(e[0]), endpoint(e[1]), e[2].get<std::int64_t>()});
    }
    return EdgeLabeledGraph(m, std::move(names), std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, e.what());
  }
}

std::string serialize_graph(const EdgeLabeledGraph& g) {
  std::ostringstream os;
  os << "mod " << g.modulus() << "\nvertices";
  for (const auto& n : g.names()) os << ' ' << n;
  os << '\n';
  for (const auto& e : g.edges()) os << "edge " << g.names()[e.u] << ' ' << g.names()[e.v] << ' ' << e.label << '\n';
  return os.str();
}

std::string serialize_graph_json(const EdgeLabeledGraph& g) {
  nlohmann::json doc;
  doc["mod"] = g.modulus();
  doc["vertices"] = g.names();
  auto edges = nlohmann::json::array();
  for (const auto& e : g.edges()) edges.push_back({g.names()[e.u], g.names()[e.v], e.label});
  doc["edges"] = edges;
  return doc.dump();
}

}  // namespace splinemod

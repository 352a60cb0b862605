#include "splinemod/error.hpp"
#include "splinemod/graph.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace splinemod;
using testing_support::sp;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InternalInconsistency;
}

}  // namespace

TEST(Parse, SixCycle) {
  const auto g = testing_support::load("six_cycle_21.graph");
  EXPECT_EQ(g.modulus(), 21);
  EXPECT_EQ(g.vertex_count(), 6u);
  ASSERT_EQ(g.edges().size(), 6u);
  const std::vector<std::int64_t> labels{3, 3, 7, 7, 3, 7};
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(g.edges()[i].u, i);
    EXPECT_EQ(g.edges()[i].v, (i + 1) % 6);
    EXPECT_EQ(g.edges()[i].label, labels[i]);
  }
}

TEST(Parse, SingleVertex) {
  const auto g = parse_graph("mod 5\nvertices a\n");
  EXPECT_EQ(g.vertex_count(), 1u);
  EXPECT_TRUE(g.edges().empty());
}

TEST(Parse, LabelReduced) {
  const auto g = parse_graph("mod 21\nvertices a b\nedge a b 25\n");
  EXPECT_EQ(g.edges()[0].label, 4);
  EXPECT_EQ(parse_graph("mod 21\nvertices a b\nedge a b -3\n").edges()[0].label, 18);
}

TEST(Parse, CommentsAndBlankLines) {
  const auto g = parse_graph("# header\n\nmod 6   # modulus\n  vertices x y\n\nedge x y 2 # note\n");
  EXPECT_EQ(g.edges().size(), 1u);
}

TEST(Parse, Errors) {
  try {
    parse_graph("mod 6\nvertices a b\nedge a b\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    parse_graph("mod six\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
  EXPECT_EQ(code_of([] { parse_graph("vertices a\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_graph("mod -4\nvertices a\n"); }), ErrorCode::InvalidModulus);
  EXPECT_EQ(code_of([] { parse_graph("mod 4\nvertices a b\nedge a c 2\n"); }), ErrorCode::UnknownVertex);
  EXPECT_EQ(code_of([] { parse_graph("mod 4\nvertices a b\nedge a a 2\n"); }), ErrorCode::SelfLoop);
  EXPECT_EQ(code_of([] { parse_graph("mod 4\nvertices a a\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_graph("mod 4\n"); }), ErrorCode::ParseError);
}

TEST(Parse, JsonMirror) {
  const auto g = parse_graph_json(testing_support::read_file(testing_support::data_path("cycle5_8.json")));
  EXPECT_EQ(g.modulus(), 8);
  EXPECT_EQ(g.vertex_count(), 5u);
  EXPECT_EQ(g.edges()[1].label, 4);
  const auto h = parse_graph_json(R"({"mod": 6, "vertices": ["a","b"], "edges": [[0, 1, 9]]})");
  EXPECT_EQ(h.edges()[0].label, 3);
  EXPECT_EQ(code_of([] { parse_graph_json("{\"mod\": 6"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_graph_json(R"({"mod": 6, "vertices": ["a"], "edges": [["a","z",2]]})"); }),
            ErrorCode::UnknownVertex);
}

TEST(Serialize, RoundTrip) {
  for (const char* name : {"six_cycle_21.graph", "triangle_36.graph", "k4_6.graph", "triangle_z.graph"}) {
    const auto g = testing_support::load(name);
    EXPECT_EQ(parse_graph(serialize_graph(g)), g) << name;
    EXPECT_EQ(parse_graph_json(serialize_graph_json(g)), g) << name;
  }
}

TEST(Graph, Reorder) {
  const auto g = testing_support::load("triangle_36.graph");
  const auto r = g.reordered_by_names({"v3", "v1", "v2"});
  EXPECT_EQ(r.names(), (std::vector<std::string>{"v3", "v1", "v2"}));
  EXPECT_EQ(r.edges()[0].u, 1u);
  EXPECT_EQ(r.edges()[0].v, 2u);
  EXPECT_THROW(g.reordered({0, 0, 1}), Error);
  EXPECT_THROW(g.reordered_by_names({"v1", "v2"}), Error);
}

TEST(Graph, Connectivity) {
  EXPECT_TRUE(testing_support::load("k4_6.graph").is_connected());
  EXPECT_FALSE(parse_graph("mod 4\nvertices a b c\nedge a b 2\n").is_connected());
}

TEST(Normalize, ZeroEdgeMerges) {
  // the mod-4 reduction of the 36-triangle: labels 0, 2, 2
  const auto g = parse_graph("mod 4\nvertices v1 v2 v3\nedge v1 v2 0\nedge v2 v3 2\nedge v3 v1 2\n");
  const auto [h, report] = normalize(g);
  EXPECT_EQ(h.vertex_count(), 2u);
  ASSERT_EQ(h.edges().size(), 1u);
  EXPECT_EQ(h.edges()[0].label, 2);
  EXPECT_EQ(report.vertex_merge_map, (std::vector<std::size_t>{0, 0, 1}));
  ASSERT_EQ(report.collapsed_parallel_edges.size(), 1u);
  EXPECT_EQ(report.collapsed_parallel_edges[0].surviving_label, 2);
  EXPECT_EQ(h.names(), (std::vector<std::string>{"v1", "v3"}));
}

TEST(Normalize, UnitsDropped) {
  const auto g = parse_graph("mod 10\nvertices a b c\nedge a b 3\nedge b c 7\nedge a c 9\n");
  const auto [h, report] = normalize(g);
  EXPECT_EQ(h.vertex_count(), 3u);
  EXPECT_TRUE(h.edges().empty());
  EXPECT_EQ(report.dropped_unit_edges.size(), 3u);
}

TEST(Normalize, ParallelCollapseToLcm) {
  // 4 and 6 mod 12: both constraints together force equality mod 12
  const auto g = parse_graph("mod 12\nvertices a b\nedge a b 4\nedge a b 6\n");
  const auto [h, report] = normalize(g);
  EXPECT_EQ(h.vertex_count(), 1u);
  EXPECT_EQ(report.vertex_merge_map, (std::vector<std::size_t>{0, 0}));
  const auto g2 = parse_graph("mod 12\nvertices a b\nedge a b 2\nedge a b 8\n");
  const auto n2 = normalize(g2);
  ASSERT_EQ(n2.graph.edges().size(), 1u);
  EXPECT_EQ(n2.graph.edges()[0].label, 4);
}

TEST(Normalize, LabelReplacedByGcd) {
  const auto [h, report] = normalize(parse_graph("mod 36\nvertices a b\nedge a b 30\n"));
  EXPECT_EQ(h.edges()[0].label, 6);
}

TEST(Normalize, Idempotent) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = testing_support::random_graph(rng, 1 + rng() % 6, 1 + rng() % 40, 0.6, true);
    const auto once = normalize(g);
    const auto twice = normalize(once.graph);
    ASSERT_TRUE(twice.report.is_identity()) << serialize_graph(g);
    ASSERT_EQ(twice.graph, once.graph);
    for (const auto& e : once.graph.edges()) {
      ASSERT_NE(e.label, 0);
      ASSERT_NE(std::gcd(e.label, once.graph.modulus()), 1);
    }
  }
}

TEST(Normalize, PreservesSplinesBruteForce) {
  std::mt19937_64 rng(5);
  int checked = 0;
  while (checked < 150) {
    const std::size_t n = 1 + rng() % 5;
    const std::int64_t m = 2 + rng() % 29;
    double size = 1;
    for (std::size_t i = 0; i < n; ++i) size *= static_cast<double>(m);
    if (size > 2e5) continue;
    ++checked;
    const auto g = testing_support::random_graph(rng, n, m, 0.7, true);
    const auto [h, report] = normalize(g);
    const auto original = testing_support::naive_splines(g);
    const auto reduced = testing_support::naive_splines(h);
    ASSERT_EQ(original.size(), reduced.size()) << serialize_graph(g);
    std::vector<Spline> pulled;
    for (const auto& s : reduced) pulled.push_back(report.pull_back(s));
    std::sort(pulled.begin(), pulled.end());
    ASSERT_EQ(pulled, original);
  }
}

TEST(SplineCheck, Examples) {
  const auto c = testing_support::load("six_cycle_21.graph");
  EXPECT_TRUE(spline_check(c, Spline::trivial(6, 21)));
  EXPECT_TRUE(spline_check(c, sp({0, 3, 3, 10, 10, 7}, 21)));
  EXPECT_TRUE(spline_check(c, sp({0, 0, 3, 3, 10, 7}, 21)));
  EXPECT_FALSE(spline_check(c, sp({1, 0, 0, 0, 0, 0}, 21)));
  const auto g = parse_graph("mod 4\nvertices a b c\nedge a b 2\n");
  EXPECT_FALSE(spline_check(g, sp({0, 1, 0}, 4)));
  EXPECT_THROW(spline_check(g, sp({0, 1}, 4)), Error);
}

TEST(SplineCheck, MatchesEnumeration) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = testing_support::random_graph(rng, 3, 2 + rng() % 15, 0.8);
    const auto all = testing_support::naive_splines(g);
    std::size_t count = 0;
    const std::int64_t m = g.modulus();
    for (std::int64_t a = 0; a < m; ++a)
      for (std::int64_t b = 0; b < m; ++b)
        for (std::int64_t c = 0; c < m; ++c) count += spline_check(g, sp({a, b, c}, m));
    ASSERT_EQ(count, all.size());
  }
}

TEST(SplineOps, OrderAndLeading) {
  EXPECT_EQ(sp({18, 12, 0}, 36).order(), 6);
  EXPECT_EQ(Spline::trivial(3, 36).order(), 36);
  EXPECT_EQ(Spline::zero(3, 36).order(), 1);
  EXPECT_EQ(sp({0, 0, 3}, 6).leading_vertex(), 2u);
  EXPECT_EQ((sp({0, 2, 3}, 6).scaled(3)), sp({0, 0, 3}, 6));
  EXPECT_EQ((sp({5, 4}, 6) + sp({2, 2}, 6)), sp({1, 0}, 6));
  EXPECT_EQ(sp({18, 12, 0}, 36).reduced(4), sp({2, 0, 0}, 4));
  EXPECT_THROW(sp({1}, 36).reduced(5), Error);
}

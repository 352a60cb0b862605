#include "splinemod/crt.hpp"
#include "splinemod/engine.hpp"
#include "splinemod/error.hpp"
#include "splinemod/oracle.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace splinemod;
using testing_support::load;
using testing_support::sp;

namespace {
std::vector<std::int64_t> labels_of(const EdgeLabeledGraph& g) {
  std::vector<std::int64_t> out;
  for (const auto& e : g.edges()) out.push_back(e.label);
  return out;
}
}  // namespace

TEST(Reduce, Triangle36) {
  const auto g = load("triangle_36.graph");
  EXPECT_EQ(labels_of(reduce_graph(g, 4)), (std::vector<std::int64_t>{0, 2, 2}));
  EXPECT_EQ(labels_of(reduce_graph(g, 9)), (std::vector<std::int64_t>{3, 3, 0}));
  EXPECT_EQ(reduce_graph(g, 4).modulus(), 4);
  EXPECT_THROW(reduce_graph(g, 5), Error);
  try {
    reduce_graph(g, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotADivisor);
  }
}

TEST(Idempotent, Values) {
  EXPECT_EQ(crt_idempotent(4, 36), 9);
  EXPECT_EQ(crt_idempotent(9, 36), 28);
  EXPECT_EQ(crt_idempotent(3, 21), 7);
  EXPECT_EQ(crt_idempotent(7, 21), 15);
  EXPECT_EQ(crt_idempotent(8, 8), 1);
}

TEST(Decompose, Triangle36) {
  const auto g = load("triangle_36.graph");
  const auto d = decompose(g);
  ASSERT_EQ(d.components.size(), 2u);
  EXPECT_EQ(d.components[0].q, 4);
  EXPECT_EQ(d.components[0].module.invariant_factors, (std::vector<std::int64_t>{2, 4}));
  EXPECT_EQ(d.components[1].q, 9);
  EXPECT_EQ(d.components[1].module.invariant_factors, (std::vector<std::int64_t>{3, 9}));
  EXPECT_EQ(d.recombined.invariant_factors, (std::vector<std::int64_t>{6, 36}));
  EXPECT_EQ(d.recombined.invariant_factors, invariant_factors(g).invariant_factors);
  EXPECT_TRUE(generates_module(g, d.recombined.mgs));
  EXPECT_TRUE(generates_module(g, d.recombined.flow_up));
}

TEST(Decompose, EntrywiseCrt) {
  // (0,0,2) mod 4 and (0,3,0) mod 9 glue to (0,12,18) mod 36
  const auto g = load("triangle_36.graph");
  EXPECT_TRUE(spline_check(reduce_graph(g, 4), sp({0, 0, 2}, 4)));
  EXPECT_TRUE(spline_check(reduce_graph(g, 9), sp({0, 3, 0}, 9)));
  const std::vector<Residue> a{{0, 4}, {3, 9}}, b{{2, 4}, {0, 9}};
  EXPECT_EQ(crt_combine(a), 12);
  EXPECT_EQ(crt_combine(b), 18);
  EXPECT_TRUE(spline_check(g, sp({0, 12, 18}, 36)));
}

TEST(Decompose, SixCycle21) {
  const auto g = load("six_cycle_21.graph");
  const auto d = decompose(g);
  ASSERT_EQ(d.components.size(), 2u);
  for (const auto& c : d.components) EXPECT_EQ(c.module.rank(), 3u);
  EXPECT_EQ(d.recombined.invariant_factors, (std::vector<std::int64_t>{21, 21, 21}));
}

TEST(Decompose, Rejects) {
  EXPECT_THROW(decompose(load("edge_z.graph")), Error);
  EXPECT_THROW(decompose(parse_graph("mod 1\nvertices a\n")), Error);
}

TEST(Decompose, PrimePowerIsSingleComponent) {
  const auto g = parse_graph("mod 8\nvertices a b c\nedge a b 2\nedge b c 4\n");
  const auto d = decompose(g);
  ASSERT_EQ(d.components.size(), 1u);
  EXPECT_EQ(d.recombined.invariant_factors, invariant_factors(g).invariant_factors);
}

// Property: CRT route, direct engine and brute force agree.
TEST(DecomposeProperty, MatchesDirectAndOracle) {
  std::mt19937_64 rng(11);
  const std::int64_t moduli[] = {6, 10, 12, 15, 18, 20, 30, 36, 42, 60};
  for (int trial = 0; trial < 80; ++trial) {
    const std::int64_t m = moduli[rng() % std::size(moduli)];
    const std::size_t n = 2 + rng() % 3;
    const auto g = testing_support::random_graph(rng, n, m, 0.7, trial % 3 == 0);
    const auto d = decompose(g);
    const auto direct = solve(g).module;
    ASSERT_EQ(d.recombined.invariant_factors, direct.invariant_factors) << serialize_graph(g);
    ASSERT_TRUE(generates_module(g, d.recombined.mgs));
    for (const auto& s : d.recombined.mgs) ASSERT_TRUE(spline_check(g, s));
    const auto all = enumerate_splines(g, 100'000'000);
    ASSERT_EQ(fingerprint(all).invariant_factors, direct.invariant_factors);
  }
}

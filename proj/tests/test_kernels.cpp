#include "splinemod/kernels.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace splinemod::kernels;

namespace {

struct Block {
  std::vector<std::vector<std::int32_t>> data;
  std::vector<const std::int32_t*> ptrs;
};

Block random_block(std::mt19937_64& rng, std::size_t n, std::size_t count, std::int32_t m) {
  Block b;
  b.data.assign(n, std::vector<std::int32_t>(count));
  for (auto& col : b.data)
    for (auto& x : col) x = static_cast<std::int32_t>(rng() % static_cast<std::uint64_t>(m));
  for (auto& col : b.data) b.ptrs.push_back(col.data());
  return b;
}

}  // namespace

TEST(Kernels, ScalarAlwaysAvailable) {
  const auto tables = available_tables();
  ASSERT_FALSE(tables.empty());
  EXPECT_EQ(tables.front()->isa, Isa::Scalar);
  EXPECT_EQ(&scalar_table(), tables.front());
}

TEST(Kernels, MagicConstant) {
  for (std::uint32_t d = 2; d < 5000; ++d) {
    const auto e = EdgeTest::make(0, 1, d);
    for (std::uint32_t x = 0; x < (1u << 16); x += 7) ASSERT_EQ(x * e.magic < e.magic, x % d == 0) << d << " " << x;
  }
}

TEST(Kernels, CheckBlockEquivalence) {
  std::mt19937_64 rng(17);
  for (const auto* table : available_tables()) {
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 2 + rng() % 6;
      const std::int32_t m = static_cast<std::int32_t>(2 + rng() % (trial < 250 ? 200 : kMaxLaneModulus - 2));
      const std::size_t count = rng() % 70;
      Block b = random_block(rng, n, count, m);
      std::vector<EdgeTest> edges;
      for (std::size_t k = 0; k < 1 + rng() % 6; ++k) {
        std::uint32_t u = static_cast<std::uint32_t>(rng() % n), v = static_cast<std::uint32_t>(rng() % n);
        if (u == v) continue;
        // the oracle only feeds divisors of m
        const std::uint32_t d =
            std::gcd(1 + static_cast<std::uint32_t>(rng() % static_cast<std::uint64_t>(m)), static_cast<std::uint32_t>(m));
        edges.push_back(EdgeTest::make(u, v, d));
      }
      // make some lanes satisfy the edges
      for (std::size_t i = 0; i < count; i += 3)
        for (std::size_t v = 1; v < n; ++v) b.data[v][i] = b.data[0][i];
      std::vector<std::uint8_t> expected(count), got(count);
      scalar_table().check_block(CheckArgs{b.ptrs.data(), count, edges, m, expected.data()});
      table->check_block(CheckArgs{b.ptrs.data(), count, edges, m, got.data()});
      ASSERT_EQ(got, expected) << to_string(table->isa) << " m=" << m;
      for (std::size_t i = 0; i < count; ++i) {
        bool ok = true;
        for (const auto& e : edges) ok &= ((b.data[e.u][i] - b.data[e.v][i]) % static_cast<std::int32_t>(e.divisor)) == 0;
        ASSERT_EQ(expected[i], ok ? 1 : 0);
      }
    }
  }
}

TEST(Kernels, AddModEncodeEquivalence) {
  std::mt19937_64 rng(23);
  for (const auto* table : available_tables()) {
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 1 + rng() % 8;
      const std::int32_t m = static_cast<std::int32_t>(2 + rng() % (trial < 250 ? 100 : kMaxLaneModulus - 2));
      const std::size_t count = rng() % 50;
      Block in = random_block(rng, n, count, m);
      std::vector<std::int32_t> offset(n);
      for (auto& o : offset) o = static_cast<std::int32_t>(rng() % static_cast<std::uint64_t>(m));
      std::vector<std::vector<std::int32_t>> out1(n, std::vector<std::int32_t>(count)), out2 = out1;
      std::vector<std::int32_t*> p1, p2;
      for (std::size_t v = 0; v < n; ++v) {
        p1.push_back(out1[v].data());
        p2.push_back(out2[v].data());
      }
      std::vector<std::uint64_t> c1(count), c2(count);
      scalar_table().add_mod_encode(AddArgs{in.ptrs.data(), count, offset.data(), n, m, p1.data(), c1.data()});
      table->add_mod_encode(AddArgs{in.ptrs.data(), count, offset.data(), n, m, p2.data(), c2.data()});
      ASSERT_EQ(out1, out2) << to_string(table->isa);
      ASSERT_EQ(c1, c2) << to_string(table->isa);
      for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t code = 0;
        for (std::size_t v = 0; v < n; ++v) {
          const std::int32_t s = (in.data[v][i] + offset[v]) % m;
          ASSERT_EQ(out1[v][i], s);
          code = code * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(s);
        }
        ASSERT_EQ(c1[i], code);
      }
    }
  }
}

TEST(Kernels, LargeCodes) {
  // 64-bit Horner with carries across the 32-bit halves
  const std::int32_t m = kMaxLaneModulus - 1;
  const std::size_t n = 4, count = 16;
  std::vector<std::vector<std::int32_t>> in(n, std::vector<std::int32_t>(count, m - 1));
  std::vector<const std::int32_t*> ip;
  for (auto& c : in) ip.push_back(c.data());
  std::vector<std::int32_t> offset(n, 0);
  for (const auto* table : available_tables()) {
    std::vector<std::vector<std::int32_t>> out(n, std::vector<std::int32_t>(count));
    std::vector<std::int32_t*> op;
    for (auto& c : out) op.push_back(c.data());
    std::vector<std::uint64_t> codes(count);
    table->add_mod_encode(AddArgs{ip.data(), count, offset.data(), n, m, op.data(), codes.data()});
    const std::uint64_t mm = static_cast<std::uint64_t>(m);
    for (auto c : codes) ASSERT_EQ(c, mm * mm * mm * mm - 1) << to_string(table->isa);
  }
}

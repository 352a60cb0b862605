#include "splinemod/oracle.hpp"

#include "splinemod/engine.hpp"
#include "splinemod/error.hpp"
#include "splinemod/kernels.hpp"
#include "splinemod/number_theory.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <numeric>
#include <string_view>
#include <unordered_set>

namespace splinemod {

namespace {

using kernels::EdgeTest;

constexpr std::int64_t kMaxOracleModulus = std::int64_t{1} << 30;
constexpr std::uint64_t kBitsetLimit = std::uint64_t{1} << 28;

std::uint64_t required_or_max(std::int64_t m, std::size_t n) { return vector_space_size(m, n).value_or(UINT64_MAX); }

void check_budget(std::int64_t m, std::size_t n, std::uint64_t budget) {
  if (m == 0) throw Error(ErrorCode::IntegerMode, "the oracle works over Z/mZ only");
  const auto size = vector_space_size(m, n);
  if (!size || *size > budget || m >= kMaxOracleModulus) throw BudgetExceeded(required_or_max(m, n), budget);
}

const kernels::KernelTable& kernels_for(std::int64_t m) {
  return m < kernels::kMaxLaneModulus ? kernels::active_table() : kernels::scalar_table();
}

// Membership set for codes below `limit`.
class Visited {
 public:
  explicit Visited(std::uint64_t limit) {
    if (limit <= kBitsetLimit) bits_.assign((limit + 63) / 64, 0);
  }
  // true if newly inserted
  bool insert(std::uint64_t code) {
    if (!bits_.empty()) {
      auto& word = bits_[code >> 6];
      const std::uint64_t bit = std::uint64_t{1} << (code & 63);
      if (word & bit) return false;
      word |= bit;
      return true;
    }
    return hashed_.insert(code).second;
  }

 private:
  std::vector<std::uint64_t> bits_;
  std::unordered_set<std::uint64_t> hashed_;
};

struct Enumerator {
  const EdgeLabeledGraph& g;
  std::size_t n;
  std::int32_t m;
  std::vector<std::vector<EdgeTest>> closing;  // edges whose later endpoint is k
  std::vector<std::int32_t> prefix;
  std::vector<std::vector<std::int32_t>> lanes;  // SoA block for the last vertex
  std::vector<const std::int32_t*> lane_ptrs;
  std::vector<std::uint8_t> mask;
  std::vector<std::int32_t> row;
  const kernels::KernelTable& table;
  SplineSet& out;

  Enumerator(const EdgeLabeledGraph& graph, SplineSet& sink)
      : g(graph), n(graph.vertex_count()), m(static_cast<std::int32_t>(graph.modulus())), closing(n), prefix(n),
        lanes(n), lane_ptrs(n), mask(static_cast<std::size_t>(m)), row(n), table(kernels_for(m)), out(sink) {
    for (const auto& e : g.edges()) {
      const auto gen = static_cast<std::uint32_t>(g.ideal_generator(e));
      if (gen == 1) continue;
      closing[std::max(e.u, e.v)].push_back(
          EdgeTest::make(static_cast<std::uint32_t>(e.u), static_cast<std::uint32_t>(e.v), gen));
    }
    for (std::size_t v = 0; v < n; ++v) {
      lanes[v].assign(static_cast<std::size_t>(m), 0);
      lane_ptrs[v] = lanes[v].data();
    }
    std::iota(lanes[n - 1].begin(), lanes[n - 1].end(), 0);
  }

  bool prefix_ok(std::size_t k) const {
    for (const auto& e : closing[k]) {
      const std::int64_t diff = prefix[e.u] - prefix[e.v] + m;
      if (diff % e.divisor != 0) return false;
    }
    return true;
  }

  void finish(std::uint64_t prefix_code) {
    const std::size_t last = n - 1;
    for (const auto& e : closing[last]) {
      const std::size_t other = e.u == last ? e.v : e.u;
      std::fill(lanes[other].begin(), lanes[other].end(), prefix[other]);
    }
    table.check_block(
        kernels::CheckArgs{lane_ptrs.data(), static_cast<std::size_t>(m), closing[last], m, mask.data()});
    std::copy(prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(last), row.begin());
    const std::uint64_t base = prefix_code * static_cast<std::uint64_t>(m);
    for (std::int32_t x = 0; x < m; ++x) {
      if (!mask[static_cast<std::size_t>(x)]) continue;
      row[last] = x;
      out.push_back_sorted(row.data(), base + static_cast<std::uint64_t>(x));
    }
  }

  void descend(std::size_t k, std::uint64_t code) {
    if (k == n - 1) {
      finish(code);
      return;
    }
    for (std::int32_t x = 0; x < m; ++x) {
      prefix[k] = x;
      if (!prefix_ok(k)) continue;
      descend(k + 1, code * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(x));
    }
  }
};

}  // namespace

std::uint64_t default_budget() {
  const char* env = std::getenv("SPLINEMOD_BUDGET");
  if (!env) return kDefaultBudget;
  std::uint64_t v = 0;
  const std::string_view s(env);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v == 0) return kDefaultBudget;
  return v;
}

std::optional<std::uint64_t> vector_space_size(std::int64_t m, std::size_t n) {
  if (m <= 0) return std::nullopt;
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (__builtin_mul_overflow(size, static_cast<std::uint64_t>(m), &size)) return std::nullopt;
  }
  return size;
}

// ---------------------------------------------------------------- SplineSet

Spline SplineSet::at(std::size_t i) const {
  Spline s{std::vector<std::int64_t>(n_), m_};
  for (std::size_t v = 0; v < n_; ++v) s.values[v] = flat_[i * n_ + v];
  return s;
}

std::vector<Spline> SplineSet::to_vector() const {
  std::vector<Spline> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i));
  return out;
}

std::uint64_t SplineSet::encode(const Spline& s) const {
  std::uint64_t code = 0;
  for (auto v : s.values) code = code * static_cast<std::uint64_t>(m_) + static_cast<std::uint64_t>(mod_floor(v, m_));
  return code;
}

bool SplineSet::contains(const Spline& s) const {
  if (s.size() != n_) return false;
  return std::binary_search(codes_.begin(), codes_.end(), encode(s));
}

void SplineSet::push_back_sorted(const std::int32_t* values, std::uint64_t code) {
  flat_.insert(flat_.end(), values, values + n_);
  codes_.push_back(code);
}

SplineSet SplineSet::from_rows(std::size_t n, std::int64_t modulus, std::vector<std::int32_t> flat) {
  SplineSet tmp(n, modulus);
  const std::size_t rows = n == 0 ? 0 : flat.size() / n;
  std::vector<std::pair<std::uint64_t, std::size_t>> order(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    std::uint64_t code = 0;
    for (std::size_t v = 0; v < n; ++v)
      code = code * static_cast<std::uint64_t>(modulus) + static_cast<std::uint64_t>(flat[r * n + v]);
    order[r] = {code, r};
  }
  std::sort(order.begin(), order.end());
  for (std::size_t i = 0; i < rows; ++i) {
    if (i > 0 && order[i].first == order[i - 1].first) continue;
    tmp.push_back_sorted(flat.data() + order[i].second * n, order[i].first);
  }
  return tmp;
}

// ---------------------------------------------------------------- enumeration

SplineSet enumerate_splines(const EdgeLabeledGraph& g, std::uint64_t budget) {
  check_budget(g.modulus(), g.vertex_count(), budget);
  SplineSet out(g.vertex_count(), g.modulus());
  Enumerator(g, out).descend(0, 0);
  return out;
}

// ---------------------------------------------------------------- fingerprint

ModuleFingerprint fingerprint(const SplineSet& set, std::uint64_t samples, std::uint64_t seed) {
  const std::int64_t m = set.modulus();
  const std::size_t n = set.vertices();
  ModuleFingerprint fp;
  fp.total_order = set.size();
  if (set.empty() || !set.contains(Spline::zero(n, m))) throw Error(ErrorCode::NotAGroup, "set lacks the zero vector");

  for (std::size_t i = 0; i < set.size(); ++i) ++fp.order_census[set.at(i).order()];

  std::mt19937_64 rng(seed);
  for (std::uint64_t k = 0; k < samples && set.size() > 1; ++k) {
    const Spline sum = set.at(rng() % set.size()) + set.at(rng() % set.size());
    if (!set.contains(sum)) throw Error(ErrorCode::NotAGroup, "sum of two elements leaves the set");
  }
  if (m == 1) return fp;

  // per prime: N(p^k) = #{x : p^k x = 0} = p^(sum_i min(k, a_i))
  std::vector<std::vector<unsigned>> exponents;  // per prime, descending
  std::vector<std::uint64_t> primes;
  for (const auto& pp : factorize(static_cast<std::uint64_t>(m))) {
    std::vector<unsigned> log_counts{0};
    std::uint64_t power = 1;
    for (unsigned k = 1; k <= pp.exponent; ++k) {
      power *= pp.prime;
      std::uint64_t count = 0;
      for (const auto& [order, c] : fp.order_census)
        if (power % static_cast<std::uint64_t>(order) == 0) count += c;
      unsigned lg = 0;
      while (count % pp.prime == 0) {
        count /= pp.prime;
        ++lg;
      }
      if (count != 1) throw Error(ErrorCode::NotAGroup, "p-torsion count is not a power of p");
      log_counts.push_back(lg);
    }
    std::vector<unsigned> steps;  // steps[k-1] = #{i : a_i >= k}
    for (unsigned k = 1; k <= pp.exponent; ++k) steps.push_back(log_counts[k] - log_counts[k - 1]);
    for (std::size_t k = 1; k < steps.size(); ++k)
      if (steps[k] > steps[k - 1]) throw Error(ErrorCode::NotAGroup, "inconsistent torsion counts");
    std::vector<unsigned> a;
    for (unsigned i = 1; !steps.empty() && i <= steps[0]; ++i)
      a.push_back(static_cast<unsigned>(std::count_if(steps.begin(), steps.end(), [i](unsigned s) { return s >= i; })));
    exponents.push_back(std::move(a));
    primes.push_back(pp.prime);
  }
  std::size_t t = 0;
  for (const auto& a : exponents) t = std::max(t, a.size());
  std::vector<std::int64_t> factors(t, 1);  // largest first
  for (std::size_t p = 0; p < primes.size(); ++p)
    for (std::size_t i = 0; i < exponents[p].size(); ++i)
      for (unsigned k = 0; k < exponents[p][i]; ++k) factors[i] *= static_cast<std::int64_t>(primes[p]);
  std::reverse(factors.begin(), factors.end());
  fp.invariant_factors = factors;

  std::uint64_t product = 1;
  for (auto d : factors) product *= static_cast<std::uint64_t>(d);
  if (product != fp.total_order) throw Error(ErrorCode::NotAGroup, "census does not describe an abelian group");
  return fp;
}

// ---------------------------------------------------------------- closure

SplineSet closure(const std::vector<Spline>& generators, std::size_t n, std::int64_t modulus, std::uint64_t budget) {
  if (modulus == 0) throw Error(ErrorCode::IntegerMode, "closure needs a finite modulus");
  const auto space = vector_space_size(modulus, n);
  if (!space || modulus >= kMaxOracleModulus) throw BudgetExceeded(required_or_max(modulus, n), budget);
  const auto m = static_cast<std::int32_t>(modulus);
  const auto& table = kernels_for(modulus);

  std::vector<std::vector<std::int32_t>> gens;
  for (const auto& s : generators) {
    if (s.size() != n) throw Error(ErrorCode::LengthMismatch, "generator length differs from vertex count");
    std::vector<std::int32_t> g(n);
    bool zero = true;
    for (std::size_t v = 0; v < n; ++v) {
      g[v] = static_cast<std::int32_t>(mod_floor(s.values[v], modulus));
      zero &= g[v] == 0;
    }
    if (!zero) gens.push_back(std::move(g));
  }

  Visited visited(*space);
  visited.insert(0);
  std::vector<std::int32_t> all(n, 0);
  std::vector<std::vector<std::int32_t>> frontier(n, std::vector<std::int32_t>(1, 0));
  std::size_t frontier_size = 1;
  std::uint64_t total = 1;

  constexpr std::size_t kChunk = 4096;
  std::vector<std::vector<std::int32_t>> scratch(n, std::vector<std::int32_t>(kChunk));
  std::vector<std::uint64_t> codes(kChunk);
  std::vector<const std::int32_t*> in(n);
  std::vector<std::int32_t*> out(n);
  for (std::size_t v = 0; v < n; ++v) out[v] = scratch[v].data();

  while (frontier_size > 0) {
    std::vector<std::vector<std::int32_t>> next(n);
    std::size_t next_size = 0;
    for (const auto& g : gens) {
      for (std::size_t start = 0; start < frontier_size; start += kChunk) {
        const std::size_t count = std::min(kChunk, frontier_size - start);
        for (std::size_t v = 0; v < n; ++v) in[v] = frontier[v].data() + start;
        table.add_mod_encode(kernels::AddArgs{in.data(), count, g.data(), n, m, out.data(), codes.data()});
        for (std::size_t i = 0; i < count; ++i) {
          if (!visited.insert(codes[i])) continue;
          if (++total > budget) throw BudgetExceeded(total, budget);
          for (std::size_t v = 0; v < n; ++v) {
            next[v].push_back(scratch[v][i]);
            all.push_back(scratch[v][i]);
          }
          ++next_size;
        }
      }
    }
    frontier = std::move(next);
    frontier_size = next_size;
  }
  return SplineSet::from_rows(n, modulus, std::move(all));
}

bool span_equals(const std::vector<Spline>& generators, const SplineSet& set, std::uint64_t budget) {
  const SplineSet span = closure(generators, set.vertices(), set.modulus(), std::max<std::uint64_t>(budget, set.size()));
  return span == set;
}

ClosureReport verify_by_closure(const EdgeLabeledGraph& g, const std::vector<Spline>& generators,
                                std::uint64_t samples, std::uint64_t seed, std::uint64_t budget) {
  const std::int64_t m = g.modulus();
  const std::size_t n = g.vertex_count();
  ClosureReport r;
  const SplineSet span = closure(generators, n, m, budget);
  r.closure_size = span.size();
  r.closure_inside = true;
  for (std::size_t i = 0; i < span.size(); ++i)
    if (!spline_check(g, span.at(i))) {
      r.closure_inside = false;
      break;
    }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> residue(0, m - 1);
  for (std::uint64_t k = 0; k < samples; ++k) {
    Spline f{std::vector<std::int64_t>(n), m};
    if (k % 2 == 0 || span.empty()) {
      for (auto& v : f.values) v = residue(rng);
    } else {
      // near-miss: a closure element with one coordinate moved
      f = span.at(rng() % span.size());
      f.values[rng() % n] = residue(rng);
    }
    ++r.random_vectors;
    if (spline_check(g, f) != span.contains(f)) ++r.membership_disagreements;
  }

  const auto basis = flow_up_generators(g);
  for (std::uint64_t k = 0; k < samples; ++k) {
    Spline f = Spline::zero(n, m);
    for (const auto& b : basis) f = f + b.scaled(residue(rng));
    ++r.lattice_samples;
    if (!span.contains(f)) ++r.lattice_misses;
  }
  return r;
}

RestrictionCount restriction_counts(const EdgeLabeledGraph& g_plus, std::size_t v, std::uint64_t budget) {
  const SplineSet all = enumerate_splines(g_plus, budget);
  const std::size_t n = g_plus.vertex_count();
  const auto m = static_cast<std::uint64_t>(g_plus.modulus());
  RestrictionCount out;
  std::vector<std::uint64_t> images;
  images.reserve(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Spline s = all.at(i);
    std::uint64_t code = 0;
    bool zero = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (w == v) continue;
      code = code * m + static_cast<std::uint64_t>(s.values[w]);
      zero &= s.values[w] == 0;
    }
    out.kernel += zero;
    images.push_back(code);
  }
  std::sort(images.begin(), images.end());
  out.image = static_cast<std::uint64_t>(std::unique(images.begin(), images.end()) - images.begin());
  return out;
}

}  // namespace splinemod

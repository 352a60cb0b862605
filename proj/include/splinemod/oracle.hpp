#pragma once

#include "splinemod/graph.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

namespace splinemod {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// SPLINEMOD_BUDGET if set and valid, else kDefaultBudget.
std::uint64_t default_budget();

/// m^n, or nullopt when it does not fit in 64 bits.
std::optional<std::uint64_t> vector_space_size(std::int64_t m, std::size_t n);

/// A set of vectors in (Z/m)^n kept in lexicographic order (v1 most
/// significant). Stored flat; codes are the base-m encodings.
class SplineSet {
 public:
  SplineSet(std::size_t n, std::int64_t modulus) : n_(n), m_(modulus) {}

  std::size_t vertices() const noexcept { return n_; }
  std::int64_t modulus() const noexcept { return m_; }
  std::size_t size() const noexcept { return codes_.size(); }
  bool empty() const noexcept { return codes_.empty(); }

  Spline at(std::size_t i) const;
  std::vector<Spline> to_vector() const;
  const std::vector<std::uint64_t>& codes() const noexcept { return codes_; }
  bool contains(const Spline& s) const;
  std::uint64_t encode(const Spline& s) const;

  /// Appends a vector whose code exceeds every stored code.
  void push_back_sorted(const std::int32_t* values, std::uint64_t code);
  /// Builds from unsorted rows; duplicates removed.
  static SplineSet from_rows(std::size_t n, std::int64_t modulus, std::vector<std::int32_t> flat);

  friend bool operator==(const SplineSet& a, const SplineSet& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.codes_ == b.codes_;
  }

 private:
  std::size_t n_;
  std::int64_t m_;
  std::vector<std::int32_t> flat_;
  std::vector<std::uint64_t> codes_;
};

/// Every f in (Z/m)^n passing spline_check, lexicographic. Throws
/// BudgetExceeded when m^n > budget, IntegerMode when m = 0.
SplineSet enumerate_splines(const EdgeLabeledGraph& g, std::uint64_t budget = default_budget());

struct ModuleFingerprint {
  std::uint64_t total_order = 0;
  std::map<std::int64_t, std::uint64_t> order_census;
  std::vector<std::int64_t> invariant_factors;
};

/// Census and invariant factors of a finite subgroup of (Z/m)^n. Throws
/// NotAGroup when sampled sums leave the set or the census is inconsistent.
ModuleFingerprint fingerprint(const SplineSet& set, std::uint64_t samples = 2000, std::uint64_t seed = 1);

/// Subgroup of (Z/m)^n generated by the given vectors, by breadth-first
/// closure under addition. Throws BudgetExceeded when it outgrows budget.
SplineSet closure(const std::vector<Spline>& generators, std::size_t n, std::int64_t modulus,
                  std::uint64_t budget = default_budget());

/// True iff the span of the generators equals the set exactly.
bool span_equals(const std::vector<Spline>& generators, const SplineSet& set, std::uint64_t budget = default_budget());

/// Verification for instances too large to enumerate: the closure of the
/// generators is checked element by element against the edge conditions,
/// its size is compared with the expected order, random vectors are tested
/// for membership agreement, and random lattice elements must land inside.
struct ClosureReport {
  std::uint64_t closure_size = 0;
  bool closure_inside = false;
  std::uint64_t random_vectors = 0;
  std::uint64_t membership_disagreements = 0;
  std::uint64_t lattice_samples = 0;
  std::uint64_t lattice_misses = 0;

  bool ok(std::uint64_t expected_order) const {
    return closure_inside && closure_size == expected_order && membership_disagreements == 0 && lattice_misses == 0;
  }
};
ClosureReport verify_by_closure(const EdgeLabeledGraph& g, const std::vector<Spline>& generators,
                                std::uint64_t samples, std::uint64_t seed, std::uint64_t budget = default_budget());

/// |ker pi| and |im pi| for the restriction R_{G+} -> R_G forgetting vertex
/// `v`, by enumerating R_{G+}.
struct RestrictionCount {
  std::uint64_t kernel = 0;
  std::uint64_t image = 0;
};
RestrictionCount restriction_counts(const EdgeLabeledGraph& g_plus, std::size_t v,
                                    std::uint64_t budget = default_budget());

}  // namespace splinemod

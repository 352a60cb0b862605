#pragma once

#include "splinemod/int_matrix.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace splinemod {

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;

  std::uint64_t value() const;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization with strictly increasing primes. 1 factors as [].
using Factorization = std::vector<PrimePower>;

/// Deterministic for every 64-bit input.
bool is_prime(std::uint64_t n);

Factorization factorize(std::uint64_t m);

/// All positive divisors of m in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t m);

/// gcd with the convention gcd(0, 0) = 0; result is nonnegative.
std::int64_t gcd64(std::int64_t a, std::int64_t b);
/// lcm of nonnegative values; lcm(0, x) = 0.
std::int64_t lcm64(std::int64_t a, std::int64_t b);

/// Canonical residue of a in [0, m). m must be positive.
std::int64_t mod_floor(std::int64_t a, std::int64_t m);

std::optional<std::int64_t> mod_inverse(std::int64_t a, std::int64_t m);

/// Extended gcd: returns g = gcd(a, b) >= 0 and s, t with s*a + t*b = g.
struct ExtendedGcd {
  Integer g;
  Integer s;
  Integer t;
};
ExtendedGcd xgcd(const Integer& a, const Integer& b);

struct Residue {
  Integer value;
  Integer modulus;
};

/// Unique x in [0, prod moduli) with x = value_i mod modulus_i.
/// Throws Error(NonCoprimeModuli) when two moduli share a factor.
Integer crt_combine(std::span<const Residue> residues);

/// Floor division for arbitrary-precision integers.
Integer floor_div(const Integer& a, const Integer& b);

}  // namespace splinemod

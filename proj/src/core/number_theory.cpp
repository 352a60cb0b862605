#include "splinemod/number_theory.hpp"

#include "splinemod/error.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace splinemod {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kTrialLimit = 1000;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool miller_rabin_witness(u64 n, u64 a, u64 d, unsigned s) {
  u64 x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

// Brent's variant of Pollard rho; n must be an odd composite.
u64 pollard_brent(u64 n) {
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    constexpr u64 kBatch = 128;
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += kBatch;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::vector<u64>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  const u64 d = pollard_brent(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

}  // namespace

std::uint64_t PrimePower::value() const {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < exponent; ++i) v *= prime;
  return v;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p = 2; p < kTrialLimit && p * p <= n; ++p)
    if (n % p == 0) return n == p;
  if (n < kTrialLimit * kTrialLimit) return true;
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Witness set valid for all n < 2^64.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL})
    if (miller_rabin_witness(n, a, d, s)) return false;
  return true;
}

Factorization factorize(std::uint64_t m) {
  if (m == 0) throw Error(ErrorCode::InvalidModulus, "cannot factor 0");
  std::vector<u64> primes;
  for (u64 p = 2; p < kTrialLimit && p * p <= m; ++p)
    while (m % p == 0) {
      primes.push_back(p);
      m /= p;
    }
  factor_into(m, primes);
  std::sort(primes.begin(), primes.end());
  Factorization out;
  for (u64 p : primes) {
    if (!out.empty() && out.back().prime == p)
      ++out.back().exponent;
    else
      out.push_back({p, 1});
  }
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t m) {
  std::vector<u64> out{1};
  for (const auto& pp : factorize(m)) {
    const std::size_t base = out.size();
    u64 power = 1;
    for (unsigned k = 1; k <= pp.exponent; ++k) {
      power *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return std::lcm(a, b);
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  if (m <= 0) throw std::invalid_argument("mod_floor: modulus must be positive");
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::optional<std::int64_t> mod_inverse(std::int64_t a, std::int64_t m) {
  if (m <= 0) return std::nullopt;
  const auto [g, s, t] = xgcd(Integer(static_cast<long>(mod_floor(a, m))), Integer(static_cast<long>(m)));
  if (g != 1) return std::nullopt;
  Integer r = s % Integer(static_cast<long>(m));
  if (r < 0) r += m;
  return r.get_si();
}

ExtendedGcd xgcd(const Integer& a, const Integer& b) {
  ExtendedGcd out;
  mpz_gcdext(out.g.get_mpz_t(), out.s.get_mpz_t(), out.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer crt_combine(std::span<const Residue> residues) {
  Integer value = 0;
  Integer modulus = 1;
  for (const auto& r : residues) {
    if (r.modulus <= 0) throw std::invalid_argument("crt_combine: moduli must be positive");
    const auto [g, s, t] = xgcd(modulus, r.modulus);
    if (g != 1)
      throw Error(ErrorCode::NonCoprimeModuli,
                  "gcd(" + modulus.get_str() + ", " + r.modulus.get_str() + ") = " + g.get_str());
    // value + modulus * k = r.value (mod r.modulus), k = (r.value - value) * s
    Integer k = ((r.value - value) * s) % r.modulus;
    value += modulus * k;
    modulus *= r.modulus;
    value %= modulus;
    if (value < 0) value += modulus;
  }
  return value;
}

}  // namespace splinemod

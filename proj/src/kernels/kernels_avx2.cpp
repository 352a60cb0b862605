// Compiled with -mavx2; only reached after a runtime cpu check.
#include "kernels_impl.hpp"

#include <immintrin.h>

#include <algorithm>
#include <vector>

namespace splinemod::kernels {

void check_block_avx2(const CheckArgs& a) {
  const std::size_t vec_end = a.count & ~std::size_t{7};
  const __m256i m = _mm256_set1_epi32(a.modulus);

  for (std::size_t i = 0; i < vec_end; i += 8) {
    __m256i ok = _mm256_set1_epi32(-1);
    for (const auto& e : a.edges) {
      if (e.divisor <= 1) continue;
      const __m256i cu = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.coords[e.u] + i));
      const __m256i cv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.coords[e.v] + i));
      const __m256i diff = _mm256_add_epi32(_mm256_sub_epi32(cu, cv), m);
      const __m256i magic = _mm256_set1_epi32(static_cast<int>(e.magic));
      const __m256i prod = _mm256_mullo_epi32(diff, magic);
      // prod < magic (unsigned)  <=>  min(prod, magic - 1) == prod
      const __m256i lim = _mm256_set1_epi32(static_cast<int>(e.magic - 1));
      ok = _mm256_and_si256(ok, _mm256_cmpeq_epi32(_mm256_min_epu32(prod, lim), prod));
    }
    const auto bits = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(ok)));
    for (int k = 0; k < 8; ++k) a.mask[i + k] = static_cast<std::uint8_t>((bits >> k) & 1u);
  }

  if (vec_end < a.count) {
    std::size_t nv = 0;
    for (const auto& e : a.edges) nv = std::max<std::size_t>(nv, std::max(e.u, e.v) + 1);
    std::vector<const std::int32_t*> ptrs(nv);
    for (std::size_t v = 0; v < nv; ++v) ptrs[v] = a.coords[v] + vec_end;
    CheckArgs tail = a;
    tail.coords = ptrs.data();
    tail.count = a.count - vec_end;
    tail.mask = a.mask + vec_end;
    check_block_scalar(tail);
  }
}

void add_mod_encode_avx2(const AddArgs& a) {
  const std::size_t vec_end = a.count & ~std::size_t{7};
  const __m256i m = _mm256_set1_epi32(a.modulus);
  const __m256i m_minus_1 = _mm256_set1_epi32(a.modulus - 1);
  const __m256i m64 = _mm256_set1_epi64x(a.modulus);

  for (std::size_t i = 0; i < vec_end; i += 8) {
    __m256i lo = _mm256_setzero_si256();  // codes of lanes i..i+3
    __m256i hi = _mm256_setzero_si256();  // lanes i+4..i+7
    for (std::size_t v = 0; v < a.vertices; ++v) {
      const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.in[v] + i));
      __m256i s = _mm256_add_epi32(x, _mm256_set1_epi32(a.offset[v]));
      const __m256i wrap = _mm256_cmpgt_epi32(s, m_minus_1);
      s = _mm256_sub_epi32(s, _mm256_and_si256(wrap, m));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(a.out[v] + i), s);

      // code = code * m + s in 64 bits; m < 2^15 so split code into 32-bit halves
      auto horner = [&](__m256i code, __m256i digits) {
        const __m256i low = _mm256_mul_epu32(code, m64);
        const __m256i high = _mm256_slli_epi64(_mm256_mul_epu32(_mm256_srli_epi64(code, 32), m64), 32);
        return _mm256_add_epi64(_mm256_add_epi64(low, high), digits);
      };
      lo = horner(lo, _mm256_cvtepu32_epi64(_mm256_castsi256_si128(s)));
      hi = horner(hi, _mm256_cvtepu32_epi64(_mm256_extracti128_si256(s, 1)));
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(a.codes + i), lo);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(a.codes + i + 4), hi);
  }

  if (vec_end < a.count) {
    std::vector<const std::int32_t*> in(a.vertices);
    std::vector<std::int32_t*> out(a.vertices);
    for (std::size_t v = 0; v < a.vertices; ++v) {
      in[v] = a.in[v] + vec_end;
      out[v] = a.out[v] + vec_end;
    }
    AddArgs tail = a;
    tail.in = in.data();
    tail.out = out.data();
    tail.count = a.count - vec_end;
    tail.codes = a.codes + vec_end;
    add_mod_encode_scalar(tail);
  }
}

}  // namespace splinemod::kernels

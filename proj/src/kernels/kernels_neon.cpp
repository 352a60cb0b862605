// aarch64 only.
#include "kernels_impl.hpp"

#include <arm_neon.h>

#include <algorithm>
#include <vector>

namespace splinemod::kernels {

void check_block_neon(const CheckArgs& a) {
  const std::size_t vec_end = a.count & ~std::size_t{3};
  const int32x4_t m = vdupq_n_s32(a.modulus);
  for (std::size_t i = 0; i < vec_end; i += 4) {
    uint32x4_t ok = vdupq_n_u32(~0u);
    for (const auto& e : a.edges) {
      if (e.divisor <= 1) continue;
      const int32x4_t diff = vaddq_s32(vsubq_s32(vld1q_s32(a.coords[e.u] + i), vld1q_s32(a.coords[e.v] + i)), m);
      const uint32x4_t prod = vmulq_u32(vreinterpretq_u32_s32(diff), vdupq_n_u32(e.magic));
      ok = vandq_u32(ok, vcltq_u32(prod, vdupq_n_u32(e.magic)));
    }
    std::uint32_t lanes[4];
    vst1q_u32(lanes, ok);
    for (int k = 0; k < 4; ++k) a.mask[i + k] = lanes[k] ? 1 : 0;
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

void add_mod_encode_neon(const AddArgs& a) {
  const std::size_t vec_end = a.count & ~std::size_t{3};
  const int32x4_t m = vdupq_n_s32(a.modulus);
  const uint32x2_t m2 = vdup_n_u32(static_cast<std::uint32_t>(a.modulus));
  for (std::size_t i = 0; i < vec_end; i += 4) {
    uint64x2_t lo = vdupq_n_u64(0), hi = vdupq_n_u64(0);
    for (std::size_t v = 0; v < a.vertices; ++v) {
      int32x4_t s = vaddq_s32(vld1q_s32(a.in[v] + i), vdupq_n_s32(a.offset[v]));
      s = vsubq_s32(s, vandq_s32(vreinterpretq_s32_u32(vcgeq_s32(s, m)), m));
      vst1q_s32(a.out[v] + i, s);
      const uint32x4_t us = vreinterpretq_u32_s32(s);
      auto horner = [&](uint64x2_t code, uint32x2_t digits) {
        const uint64x2_t low = vmull_u32(vmovn_u64(code), m2);
        const uint64x2_t high = vshlq_n_u64(vmull_u32(vshrn_n_u64(code, 32), m2), 32);
        return vaddq_u64(vaddq_u64(low, high), vmovl_u32(digits));
      };
      lo = horner(lo, vget_low_u32(us));
      hi = horner(hi, vget_high_u32(us));
    }
    vst1q_u64(a.codes + i, lo);
    vst1q_u64(a.codes + i + 2, hi);
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

#include "kernels_impl.hpp"

namespace splinemod::kernels {

EdgeTest EdgeTest::make(std::uint32_t u, std::uint32_t v, std::uint32_t divisor) {
  return EdgeTest{u, v, divisor, divisor <= 1 ? 0u : UINT32_MAX / divisor + 1};
}

void check_block_scalar(const CheckArgs& a) {
  const auto m = static_cast<std::uint32_t>(a.modulus);
  for (std::size_t i = 0; i < a.count; ++i) a.mask[i] = 1;
  for (const auto& e : a.edges) {
    if (e.divisor <= 1) continue;
    const std::int32_t* cu = a.coords[e.u];
    const std::int32_t* cv = a.coords[e.v];
    for (std::size_t i = 0; i < a.count; ++i) {
      const std::uint32_t diff = static_cast<std::uint32_t>(cu[i] - cv[i]) + m;
      a.mask[i] &= static_cast<std::uint8_t>(diff % e.divisor == 0);
    }
  }
}

void add_mod_encode_scalar(const AddArgs& a) {
  const std::int32_t m = a.modulus;
  for (std::size_t i = 0; i < a.count; ++i) a.codes[i] = 0;
  for (std::size_t v = 0; v < a.vertices; ++v) {
    const std::int32_t* in = a.in[v];
    std::int32_t* out = a.out[v];
    const std::int32_t off = a.offset[v];
    for (std::size_t i = 0; i < a.count; ++i) {
      std::int32_t s = in[i] + off;
      if (s >= m) s -= m;
      out[i] = s;
      a.codes[i] = a.codes[i] * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(s);
    }
  }
}

}  // namespace splinemod::kernels

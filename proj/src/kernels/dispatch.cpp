#include "kernels_impl.hpp"

#include <cstdlib>
#include <cstring>

namespace splinemod::kernels {

namespace {

constexpr KernelTable kScalar{Isa::Scalar, check_block_scalar, add_mod_encode_scalar};
#if defined(SPLINEMOD_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::Avx2, check_block_avx2, add_mod_encode_avx2};
#endif
#if defined(SPLINEMOD_HAVE_NEON)
constexpr KernelTable kNeon{Isa::Neon, check_block_neon, add_mod_encode_neon};
#endif

bool cpu_has_avx2() {
#if defined(SPLINEMOD_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

const KernelTable& scalar_table() noexcept { return kScalar; }

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> out{&kScalar};
#if defined(SPLINEMOD_HAVE_AVX2)
  if (cpu_has_avx2()) out.push_back(&kAvx2);
#endif
#if defined(SPLINEMOD_HAVE_NEON)
  out.push_back(&kNeon);  // baseline on aarch64
#endif
  return out;
}

const KernelTable& active_table() {
  static const KernelTable* chosen = [] {
    const char* force = std::getenv("SPLINEMOD_KERNEL");
    if (force && std::strcmp(force, "scalar") == 0) return &kScalar;
    return available_tables().back();
  }();
  return *chosen;
}

}  // namespace splinemod::kernels

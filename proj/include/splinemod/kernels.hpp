#pragma once

// Inner loops of the brute-force oracle. Every routine has a scalar reference
// and optional vector variants; all variants must agree bit for bit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace splinemod::kernels {

/// Largest modulus the 32-bit lane kernels accept (differences stay < 2^16).
inline constexpr std::int32_t kMaxLaneModulus = 1 << 15;

/// One edge condition: divisor | (x_u - x_v). magic = floor((2^32 - 1) / divisor) + 1.
struct EdgeTest {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  std::uint32_t divisor = 1;
  std::uint32_t magic = 0;

  static EdgeTest make(std::uint32_t u, std::uint32_t v, std::uint32_t divisor);
};

/// Structure-of-arrays block: coords[vertex][lane].
struct CheckArgs {
  const std::int32_t* const* coords;
  std::size_t count;
  std::span<const EdgeTest> edges;
  std::int32_t modulus;
  std::uint8_t* mask;  // out: 1 where every edge holds
};

/// out[v][i] = (in[v][i] + offset[v]) mod m, codes[i] = sum out[v][i] * m^(n-1-v).
struct AddArgs {
  const std::int32_t* const* in;
  std::size_t count;
  const std::int32_t* offset;
  std::size_t vertices;
  std::int32_t modulus;
  std::int32_t* const* out;
  std::uint64_t* codes;
};

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  void (*check_block)(const CheckArgs&);
  void (*add_mod_encode)(const AddArgs&);
};

const KernelTable& scalar_table() noexcept;
/// Variants compiled in and supported by this CPU, scalar first.
std::vector<const KernelTable*> available_tables();
/// Best available variant; SPLINEMOD_KERNEL=scalar forces the reference.
const KernelTable& active_table();

}  // namespace splinemod::kernels

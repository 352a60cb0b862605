#pragma once

#include "splinemod/kernels.hpp"

namespace splinemod::kernels {

void check_block_scalar(const CheckArgs& a);
void add_mod_encode_scalar(const AddArgs& a);

#if defined(SPLINEMOD_HAVE_AVX2)
void check_block_avx2(const CheckArgs& a);
void add_mod_encode_avx2(const AddArgs& a);
#endif

#if defined(SPLINEMOD_HAVE_NEON)
void check_block_neon(const CheckArgs& a);
void add_mod_encode_neon(const AddArgs& a);
#endif

}  // namespace splinemod::kernels

#pragma once

#include "entspec/kernels.hpp"

namespace entspec::simd {

extern const KernelTable kScalarTable;
#if defined(ENTSPEC_HAVE_AVX2_TU)
extern const KernelTable kAvx2Table;
#endif
#if defined(ENTSPEC_HAVE_NEON_TU)
extern const KernelTable kNeonTable;
#endif

}  // namespace entspec::simd

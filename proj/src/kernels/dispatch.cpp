#include <cstdlib>
#include <string_view>

#include "tables.hpp"

namespace entspec::simd {

namespace {

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(ENTSPEC_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(ENTSPEC_HAVE_NEON_TU)
      return true;  // baseline on AArch64
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& select() {
  const char* forced = std::getenv("ENTSPEC_SIMD");
  if (forced != nullptr) {
    const std::string_view want(forced);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      const KernelTable* t = kernels_for(isa);
      if (t != nullptr && want == t->name) return *t;
    }
  }
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (const KernelTable* t = kernels_for(isa)) return *t;
  }
  return kScalarTable;
}

}  // namespace

const KernelTable* kernels_for(Isa isa) {
  if (!cpu_has(isa)) return nullptr;
  switch (isa) {
    case Isa::scalar:
      return &kScalarTable;
    case Isa::avx2:
#if defined(ENTSPEC_HAVE_AVX2_TU)
      return &kAvx2Table;
#else
      return nullptr;
#endif
    case Isa::neon:
#if defined(ENTSPEC_HAVE_NEON_TU)
      return &kNeonTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const KernelTable& kernels() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace entspec::simd

#pragma once

// Inner loops of the propagation and real-space transforms. Complex vectors
// are passed as interleaved (re, im) doubles, i.e. the std::complex<double>
// layout. Every variant must agree with the scalar reference up to
// floating-point reassociation.

#include <cstddef>

namespace entspec::simd {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
  Isa isa;
  const char* name;

  // y = A x; A real rows×cols column-major with leading dimension lda;
  // x has cols complex entries, y has rows.
  void (*real_gemv)(std::size_t rows, std::size_t cols, const double* a, std::size_t lda,
                    const double* x, double* y);

  // y = Aᵀ x; x has rows complex entries, y has cols.
  void (*real_gemv_t)(std::size_t rows, std::size_t cols, const double* a, std::size_t lda,
                      const double* x, double* y);

  // y = A x; A complex rows×cols row-major with leading dimension lda
  // (in complex elements).
  void (*complex_gemv)(std::size_t rows, std::size_t cols, const double* a, std::size_t lda,
                       const double* x, double* y);

  // Σ |x_i|² over n complex entries.
  double (*sum_abs2)(std::size_t n, const double* x);
};

/// Table in use, chosen once per process: the widest ISA the CPU supports,
/// unless ENTSPEC_SIMD=scalar|avx2|neon asks for a specific one.
const KernelTable& kernels();

/// Table for a given ISA, or nullptr when it is not compiled in or the CPU
/// lacks it.
const KernelTable* kernels_for(Isa isa);

}  // namespace entspec::simd

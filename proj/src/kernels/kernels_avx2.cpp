// Compiled with -mavx2 -mfma. Only reached after a runtime CPU check, so this
// file must not instantiate any inline library code shared with other TUs.

#include <immintrin.h>

#include "tables.hpp"

namespace entspec::simd {

namespace {

// [a0, a1] -> [a0, a0, a1, a1]
inline __m256d widen_pair(const double* a) {
  const __m256d v = _mm256_castpd128_pd256(_mm_loadu_pd(a));
  return _mm256_permute4x64_pd(v, 0x50);
}

inline __m256d broadcast_complex(const double* x) {
  return _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(x));
}

inline void store_complex_sum(__m256d acc, double* out) {
  const __m128d s = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
  _mm_storeu_pd(out, s);
}

void real_gemv(std::size_t rows, std::size_t cols, const double* a, std::size_t lda,
               const double* x, double* y) {
  for (std::size_t i = 0; i < 2 * rows; ++i) y[i] = 0.0;
  const std::size_t paired = rows & ~std::size_t{1};
  std::size_t j = 0;
  for (; j + 4 <= cols; j += 4) {
    const double* c0 = a + j * lda;
    const double* c1 = c0 + lda;
    const double* c2 = c1 + lda;
    const double* c3 = c2 + lda;
    const __m256d x0 = broadcast_complex(x + 2 * j);
    const __m256d x1 = broadcast_complex(x + 2 * j + 2);
    const __m256d x2 = broadcast_complex(x + 2 * j + 4);
    const __m256d x3 = broadcast_complex(x + 2 * j + 6);
    for (std::size_t i = 0; i < paired; i += 2) {
      __m256d acc = _mm256_loadu_pd(y + 2 * i);
      acc = _mm256_fmadd_pd(widen_pair(c0 + i), x0, acc);
      acc = _mm256_fmadd_pd(widen_pair(c1 + i), x1, acc);
      acc = _mm256_fmadd_pd(widen_pair(c2 + i), x2, acc);
      acc = _mm256_fmadd_pd(widen_pair(c3 + i), x3, acc);
      _mm256_storeu_pd(y + 2 * i, acc);
    }
    for (std::size_t i = paired; i < rows; ++i) {
      for (std::size_t k = 0; k < 4; ++k) {
        const double u = a[(j + k) * lda + i];
        y[2 * i] += u * x[2 * (j + k)];
        y[2 * i + 1] += u * x[2 * (j + k) + 1];
      }
    }
  }
  for (; j < cols; ++j) {
    const double* c0 = a + j * lda;
    const __m256d x0 = broadcast_complex(x + 2 * j);
    for (std::size_t i = 0; i < paired; i += 2) {
      const __m256d acc = _mm256_loadu_pd(y + 2 * i);
      _mm256_storeu_pd(y + 2 * i, _mm256_fmadd_pd(widen_pair(c0 + i), x0, acc));
    }
    for (std::size_t i = paired; i < rows; ++i) {
      y[2 * i] += c0[i] * x[2 * j];
      y[2 * i + 1] += c0[i] * x[2 * j + 1];
    }
  }
}

void real_gemv_t(std::size_t rows, std::size_t cols, const double* a, std::size_t lda,
                 const double* x, double* y) {
  const std::size_t paired = rows & ~std::size_t{1};
  for (std::size_t j = 0; j < cols; ++j) {
    const double* col = a + j * lda;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= paired; i += 4) {
      acc0 = _mm256_fmadd_pd(widen_pair(col + i), _mm256_loadu_pd(x + 2 * i), acc0);
      acc1 = _mm256_fmadd_pd(widen_pair(col + i + 2), _mm256_loadu_pd(x + 2 * i + 4), acc1);
    }
    for (; i < paired; i += 2) {
      acc0 = _mm256_fmadd_pd(widen_pair(col + i), _mm256_loadu_pd(x + 2 * i), acc0);
    }
    store_complex_sum(_mm256_add_pd(acc0, acc1), y + 2 * j);
    for (; i < rows; ++i) {
      y[2 * j] += col[i] * x[2 * i];
      y[2 * j + 1] += col[i] * x[2 * i + 1];
    }
  }
}

void complex_gemv(std::size_t rows, std::size_t cols, const double* a, std::size_t lda,
                  const double* x, double* y) {
  const std::size_t paired = cols & ~std::size_t{1};
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = a + 2 * i * lda;
    __m256d re_part = _mm256_setzero_pd();
    __m256d im_part = _mm256_setzero_pd();
    for (std::size_t j = 0; j < paired; j += 2) {
      const __m256d av = _mm256_loadu_pd(row + 2 * j);
      const __m256d xv = _mm256_loadu_pd(x + 2 * j);
      const __m256d xr = _mm256_movedup_pd(xv);
      const __m256d xi = _mm256_permute_pd(xv, 0xF);
      re_part = _mm256_fmadd_pd(av, xr, re_part);
      im_part = _mm256_fmadd_pd(_mm256_permute_pd(av, 0x5), xi, im_part);
    }
    store_complex_sum(_mm256_addsub_pd(re_part, im_part), y + 2 * i);
    for (std::size_t j = paired; j < cols; ++j) {
      const double ar = row[2 * j];
      const double ai = row[2 * j + 1];
      y[2 * i] += ar * x[2 * j] - ai * x[2 * j + 1];
      y[2 * i + 1] += ar * x[2 * j + 1] + ai * x[2 * j];
    }
  }
}

double sum_abs2(std::size_t n, const double* x) {
  const std::size_t total = 2 * n;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= total; i += 8) {
    const __m256d v0 = _mm256_loadu_pd(x + i);
    const __m256d v1 = _mm256_loadu_pd(x + i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < total; ++i) s += x[i] * x[i];
  return s;
}

}  // namespace

const KernelTable kAvx2Table{Isa::avx2, "avx2", real_gemv, real_gemv_t, complex_gemv, sum_abs2};

}  // namespace entspec::simd

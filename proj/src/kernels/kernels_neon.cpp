// AArch64 Advanced SIMD variant. One float64x2_t holds one complex value.

#include <arm_neon.h>

#include "tables.hpp"

namespace entspec::simd {

namespace {

void real_gemv(std::size_t rows, std::size_t cols, const double* a, std::size_t lda,
               const double* x, double* y) {
  for (std::size_t i = 0; i < 2 * rows; ++i) y[i] = 0.0;
  for (std::size_t j = 0; j < cols; ++j) {
    const double* col = a + j * lda;
    const float64x2_t xv = vld1q_f64(x + 2 * j);
    for (std::size_t i = 0; i < rows; ++i) {
      vst1q_f64(y + 2 * i, vfmaq_n_f64(vld1q_f64(y + 2 * i), xv, col[i]));
    }
  }
}

void real_gemv_t(std::size_t rows, std::size_t cols, const double* a, std::size_t lda,
                 const double* x, double* y) {
  for (std::size_t j = 0; j < cols; ++j) {
    const double* col = a + j * lda;
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= rows; i += 2) {
      acc0 = vfmaq_n_f64(acc0, vld1q_f64(x + 2 * i), col[i]);
      acc1 = vfmaq_n_f64(acc1, vld1q_f64(x + 2 * i + 2), col[i + 1]);
    }
    if (i < rows) acc0 = vfmaq_n_f64(acc0, vld1q_f64(x + 2 * i), col[i]);
    vst1q_f64(y + 2 * j, vaddq_f64(acc0, acc1));
  }
}

void complex_gemv(std::size_t rows, std::size_t cols, const double* a, std::size_t lda,
                  const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = a + 2 * i * lda;
    float64x2_t re_part = vdupq_n_f64(0.0);  // (ar·xr, ai·xr)
    float64x2_t im_part = vdupq_n_f64(0.0);  // (ai·xi, ar·xi)
    for (std::size_t j = 0; j < cols; ++j) {
      const float64x2_t av = vld1q_f64(row + 2 * j);
      re_part = vfmaq_n_f64(re_part, av, x[2 * j]);
      im_part = vfmaq_n_f64(im_part, vextq_f64(av, av, 1), x[2 * j + 1]);
    }
    y[2 * i] = vgetq_lane_f64(re_part, 0) - vgetq_lane_f64(im_part, 0);
    y[2 * i + 1] = vgetq_lane_f64(re_part, 1) + vgetq_lane_f64(im_part, 1);
  }
}

double sum_abs2(std::size_t n, const double* x) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t v = vld1q_f64(x + 2 * i);
    acc = vfmaq_f64(acc, v, v);
  }
  return vaddvq_f64(acc);
}

}  // namespace

const KernelTable kNeonTable{Isa::neon, "neon", real_gemv, real_gemv_t, complex_gemv, sum_abs2};

}  // namespace entspec::simd

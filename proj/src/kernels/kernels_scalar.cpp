#include "tables.hpp"

namespace entspec::simd {

namespace {

void real_gemv(std::size_t rows, std::size_t cols, const double* a, std::size_t lda,
               const double* x, double* y) {
  for (std::size_t i = 0; i < 2 * rows; ++i) y[i] = 0.0;
  for (std::size_t j = 0; j < cols; ++j) {
    const double* col = a + j * lda;
    const double xr = x[2 * j];
    const double xi = x[2 * j + 1];
    for (std::size_t i = 0; i < rows; ++i) {
      y[2 * i] += col[i] * xr;
      y[2 * i + 1] += col[i] * xi;
    }
  }
}

void real_gemv_t(std::size_t rows, std::size_t cols, const double* a, std::size_t lda,
                 const double* x, double* y) {
  for (std::size_t j = 0; j < cols; ++j) {
    const double* col = a + j * lda;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      re += col[i] * x[2 * i];
      im += col[i] * x[2 * i + 1];
    }
    y[2 * j] = re;
    y[2 * j + 1] = im;
  }
}

void complex_gemv(std::size_t rows, std::size_t cols, const double* a, std::size_t lda,
                  const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = a + 2 * i * lda;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      const double ar = row[2 * j];
      const double ai = row[2 * j + 1];
      re += ar * x[2 * j] - ai * x[2 * j + 1];
      im += ar * x[2 * j + 1] + ai * x[2 * j];
    }
    y[2 * i] = re;
    y[2 * i + 1] = im;
  }
}

double sum_abs2(std::size_t n, const double* x) {
  double s = 0.0;
  for (std::size_t i = 0; i < 2 * n; ++i) s += x[i] * x[i];
  return s;
}

}  // namespace

const KernelTable kScalarTable{Isa::scalar, "scalar", real_gemv, real_gemv_t, complex_gemv,
                               sum_abs2};

}  // namespace entspec::simd

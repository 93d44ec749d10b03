#include "entspec/linalg.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#include <cblas.h>

#include <mutex>
#include <string>

#include "entspec/errors.hpp"

extern "C" void openblas_set_num_threads(int);

namespace entspec::linalg {

void pin_blas_threads() {
  static std::once_flag once;
  std::call_once(once, [] { openblas_set_num_threads(1); });
}

SymmetricEigen symmetric_eigen(Eigen::MatrixXd matrix) {
  pin_blas_threads();
  const auto n = static_cast<lapack_int>(matrix.rows());
  SymmetricEigen out;
  out.values.resize(n);
  if (n == 0) return out;
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, matrix.data(), n, out.values.data());
  if (info != 0) {
    throw NumericError("dsyevd failed with info = " + std::to_string(info));
  }
  out.vectors = std::move(matrix);
  return out;
}

Eigen::MatrixXd matmul(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  pin_blas_threads();
  Eigen::MatrixXd c(a.rows(), b.cols());
  if (c.size() == 0) return c;
  if (a.cols() == 0) return c.setZero();
  cblas_dgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, static_cast<int>(a.rows()),
              static_cast<int>(b.cols()), static_cast<int>(a.cols()), 1.0, a.data(),
              static_cast<int>(a.rows()), b.data(), static_cast<int>(b.rows()), 0.0, c.data(),
              static_cast<int>(c.rows()));
  return c;
}

ComplexSvd complex_svd(Eigen::MatrixXcd matrix) {
  pin_blas_threads();
  const auto m = static_cast<lapack_int>(matrix.rows());
  const auto n = static_cast<lapack_int>(matrix.cols());
  const lapack_int k = std::min(m, n);
  ComplexSvd out;
  out.singular_values.resize(k);
  out.left.resize(m, k);
  Eigen::MatrixXcd vt(k, n);
  if (k == 0) return out;
  const lapack_int info = LAPACKE_zgesdd(
      LAPACK_COL_MAJOR, 'S', m, n, matrix.data(), m,
      out.singular_values.data(), out.left.data(), m,
      vt.data(), k);
  if (info != 0) {
    throw NumericError("zgesdd failed with info = " + std::to_string(info));
  }
  out.right = vt.adjoint();
  return out;
}

}  // namespace entspec::linalg

#pragma once

#include <Eigen/Dense>

namespace entspec::linalg {

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
};

/// Full eigendecomposition of a dense real symmetric matrix (lower triangle
/// is read). Throws NumericError if the solver does not converge.
SymmetricEigen symmetric_eigen(Eigen::MatrixXd matrix);

struct ComplexSvd {
  Eigen::VectorXd singular_values;  // descending
  Eigen::MatrixXcd left;            // m × min(m, n)
  Eigen::MatrixXcd right;           // n × min(m, n), so A = left · diag(s) · rightᴴ
};

/// Thin SVD of a dense complex matrix.
ComplexSvd complex_svd(Eigen::MatrixXcd matrix);

/// a · b through BLAS dgemm.
Eigen::MatrixXd matmul(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Keeps the BLAS backend on one thread per call; callers parallelize over
/// independent problems instead, which keeps results schedule-independent.
void pin_blas_threads();

}  // namespace entspec::linalg

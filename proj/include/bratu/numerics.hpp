#pragma once

#include <optional>

#include <Eigen/Dense>

namespace bratu {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Spectrum of a dense real matrix. Values are sorted by ascending real
/// part (ties broken by ascending imaginary part). When present, column j
/// of `vectors` is the right eigenvector for values[j], scaled to unit
/// sup-norm with its first nonzero component real and positive.
struct EigenResult {
  ComplexVector values;
  std::optional<ComplexMatrix> vectors;
};

[[nodiscard]] double inf_norm(const Matrix& a);
[[nodiscard]] double inf_norm(const Vector& v);

/// Solve A x = b by LU with partial pivoting.
/// Throws SingularMatrix when a pivot falls below 1e-14 * ||A||_inf.
[[nodiscard]] Vector lu_solve(const Matrix& a, const Vector& b);

/// All eigenvalues (and optionally right eigenvectors) of a general square
/// matrix. Throws NumericalFailure if the QR iteration does not converge.
[[nodiscard]] EigenResult eig_general(const Matrix& a, bool want_vectors);

}  // namespace bratu

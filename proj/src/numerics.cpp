#include "bratu/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "bratu/error.hpp"

namespace bratu {

namespace {

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) {
    throw InvalidArgument(std::string(what) + ": matrix has non-finite entries");
  }
}

}  // namespace

double inf_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

double inf_norm(const Vector& v) {
  if (v.size() == 0) return 0.0;
  return v.cwiseAbs().maxCoeff();
}

Vector lu_solve(const Matrix& a, const Vector& b) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw InvalidArgument("lu_solve: matrix must be square and non-empty");
  }
  if (b.size() != a.rows()) {
    throw InvalidArgument("lu_solve: right-hand side length " + std::to_string(b.size()) +
                          " does not match matrix order " + std::to_string(a.rows()));
  }
  require_finite(a, "lu_solve");

  const Eigen::PartialPivLU<Matrix> lu(a);
  const double threshold = 1e-14 * inf_norm(a);
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  if (!(pivots.minCoeff() > threshold)) {
    throw SingularMatrix("lu_solve: matrix is numerically singular (min pivot " +
                         std::to_string(pivots.minCoeff()) + ")");
  }
  return lu.solve(b);
}

EigenResult eig_general(const Matrix& a, bool want_vectors) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw InvalidArgument("eig_general: matrix must be square and non-empty");
  }
  require_finite(a, "eig_general");

  const Eigen::EigenSolver<Matrix> solver(a, want_vectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("eig_general: QR iteration did not converge");
  }
  const ComplexVector& raw = solver.eigenvalues();
  const auto size = raw.size();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(size));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&raw](Eigen::Index i, Eigen::Index j) {
    if (raw[i].real() != raw[j].real()) return raw[i].real() < raw[j].real();
    return raw[i].imag() < raw[j].imag();
  });

  EigenResult result;
  result.values.resize(size);
  for (Eigen::Index k = 0; k < size; ++k) result.values[k] = raw[order[static_cast<std::size_t>(k)]];

  if (want_vectors) {
    const ComplexMatrix raw_vectors = solver.eigenvectors();
    ComplexMatrix vectors(size, size);
    for (Eigen::Index k = 0; k < size; ++k) {
      Eigen::VectorXcd v = raw_vectors.col(order[static_cast<std::size_t>(k)]);
      const double sup = v.cwiseAbs().maxCoeff();
      if (sup > 0.0) {
        Eigen::Index lead = 0;
        while (std::abs(v[lead]) <= 1e-12 * sup) ++lead;
        const std::complex<double> phase = v[lead] / std::abs(v[lead]);
        v /= phase;
        v /= sup;
        v[lead] = std::complex<double>(v[lead].real(), 0.0);
      }
      vectors.col(k) = v;
    }
    result.vectors = std::move(vectors);
  }
  return result;
}

}  // namespace bratu

#pragma once

#include <optional>
#include <span>

#include "bratu/numerics.hpp"

namespace bratu {

/// Chebyshev-Gauss-Lobatto points x_j = L cos(j pi / n), j = 0..n, ordered
/// from +L down to -L. Endpoints are exact and the set is symmetric about 0.
class Grid1D {
 public:
  [[nodiscard]] int order() const { return n_; }
  [[nodiscard]] Eigen::Index size() const { return points_.size(); }
  [[nodiscard]] Eigen::Index interior_size() const { return points_.size() - 2; }
  [[nodiscard]] double half_width() const { return half_width_; }
  [[nodiscard]] const Vector& points() const { return points_; }
  [[nodiscard]] double operator[](Eigen::Index j) const { return points_[j]; }
  [[nodiscard]] Vector interior_points() const { return points_.segment(1, points_.size() - 2); }

  friend Grid1D cheb_points(int n, double half_width);
  friend bool operator==(const Grid1D& a, const Grid1D& b) {
    return a.n_ == b.n_ && a.half_width_ == b.half_width_;
  }

 private:
  Grid1D(int n, double half_width, Vector points)
      : n_(n), half_width_(half_width), points_(std::move(points)) {}

  int n_;
  double half_width_;
  Vector points_;
};

/// Throws InvalidArgument unless n >= 1 and half_width > 0.
[[nodiscard]] Grid1D cheb_points(int n, double half_width = 1.0);

struct DiffMatrix {
  int order = 1;
  int n = 0;
  Matrix entries;
  /// Entries with the first/last rows and columns removed (homogeneous
  /// Dirichlet restriction). Populated for the second-derivative matrix.
  std::optional<Matrix> interior;
};

/// First-derivative collocation matrix on the grid.
[[nodiscard]] DiffMatrix diff_matrix(const Grid1D& grid);

/// Second-derivative matrix, formed as the square of the first-derivative
/// matrix. Requires n >= 2.
[[nodiscard]] DiffMatrix second_diff_matrix(const Grid1D& grid);

/// Chebyshev series coefficients a_0..a_n of the degree-n interpolant of
/// values sampled on a Lobatto grid (descending order), so that
/// sum_k a_k T_k(x_j / L) = values[j].
///
/// Uses an FFTW DCT-I of length n+1 and falls back to direct summation on
/// tiny grids.
[[nodiscard]] Vector cheb_transform(std::span<const double> values);
[[nodiscard]] Vector cheb_transform(const Vector& values);
[[nodiscard]] Vector inverse_cheb_transform(const Vector& coeffs);

/// O(n^2) reference summations. Same contracts as the fast versions.
[[nodiscard]] Vector cheb_transform_direct(const Vector& values);
[[nodiscard]] Vector inverse_cheb_transform_direct(const Vector& coeffs);

/// Coefficients a_{k,l} with k the degree in x (row index of `values`) and
/// l the degree in y (column index). Throws on non-square input.
[[nodiscard]] Matrix cheb_transform_2d(const Matrix& values);
[[nodiscard]] Matrix inverse_cheb_transform_2d(const Matrix& coeffs);

/// Evaluates the degree-n interpolant of `values` at each target using the
/// barycentric formula for Lobatto points. Targets must lie in [-L, L].
[[nodiscard]] Vector barycentric_resample(const Grid1D& grid, const Vector& values,
                                          const Vector& targets);

/// Tensor-product version: values(i, j) sampled at (x_i, y_j) on the full
/// grid; returns the interpolant at (x_targets[a], y_targets[b]).
[[nodiscard]] Matrix barycentric_resample_2d(const Grid1D& grid, const Matrix& values,
                                             const Vector& x_targets, const Vector& y_targets);

}  // namespace bratu

#pragma once

#include <functional>
#include <optional>
#include <string>

#include "bratu/chebyshev.hpp"
#include "bratu/newton.hpp"
#include "bratu/numerics.hpp"

// Two-dimensional problems  Delta u + lambda f(u) = 0  on (-L, L)^2 with
// u = 0 on the boundary, discretized on the tensor Lobatto grid.
//
// Unknowns live on the M x M interior grid, M = n - 1. A field U(i_x, i_y)
// is flattened column-major, x-index fastest: k = i_y * M + i_x. With that
// ordering d^2/dx^2 = I (x) D2 and d^2/dy^2 = D2 (x) I.
namespace bratu::twod {

struct Operator2D {
  Grid1D grid;
  Matrix matrix;  ///< M^2 x M^2 discrete Laplacian
  Eigen::Index interior_size = 0;  ///< M
};

struct Field2D {
  Grid1D grid;
  Matrix interior;  ///< M x M, interior(i_x, i_y)
  double lambda = 0.0;
  std::optional<NewtonTrace> trace;

  [[nodiscard]] Vector as_vector() const;
  /// (n+1) x (n+1) values on the full grid, zero on the boundary.
  [[nodiscard]] Matrix embedded() const;
  [[nodiscard]] double u_max() const;
};

/// Inverse of Field2D::as_vector.
[[nodiscard]] Field2D field_from_vector(const Grid1D& grid, const Vector& values,
                                        double lambda = 0.0);

/// Reaction term lambda f(u) and its u-derivative, applied pointwise.
struct Nonlinearity {
  std::string name;
  std::function<double(double lambda, double u)> value;
  std::function<double(double lambda, double u)> derivative;
  double epsilon = 0.0;  ///< only meaningful for "gelfand"
};

/// exp, cosh, sinh, or gelfand (needs 0 < epsilon < 1).
[[nodiscard]] Nonlinearity make_nonlinearity(const std::string& name, double epsilon = 0.0);

/// I (x) D2 + D2 (x) I with D2 the Dirichlet-restricted second-derivative
/// matrix. Requires n >= 3.
[[nodiscard]] Operator2D assemble_laplacian(const Grid1D& grid);

/// First k eigenpairs of -Delta, ascending.
[[nodiscard]] EigenResult laplacian_eigs(const Grid1D& grid, Eigen::Index k);
[[nodiscard]] EigenResult laplacian_eigs(const Operator2D& op, Eigen::Index k, bool want_vectors);

/// Real part of eigenvector `index` reshaped to the interior grid.
[[nodiscard]] Field2D eigenfunction_field(const Grid1D& grid, const EigenResult& eigs,
                                          Eigen::Index index);

/// Ground state of -Delta, positive inside, scaled so its maximum equals amplitude.
[[nodiscard]] Field2D guess_eigenfunction(const Grid1D& grid, double amplitude);

/// A (1 - (x/L)^2)(1 - (y/L)^2) on the interior points.
[[nodiscard]] Field2D guess_onepoint(const Grid1D& grid, double amplitude);

/// Newton solve of Delta u + nl.value(lambda, u) = 0 starting from guess.
[[nodiscard]] Field2D solve_2d(double lambda, const Nonlinearity& nl, const Grid1D& grid,
                               const Field2D& guess, const NewtonConfig& config = {});
[[nodiscard]] Field2D solve_2d(double lambda, const Nonlinearity& nl, const Operator2D& op,
                               const Field2D& guess, const NewtonConfig& config = {});

/// Sup-norm of Delta u + lambda f(u) after resampling `field` barycentrically
/// onto the interior of a grid of order n_prime (same L).
[[nodiscard]] double cross_grid_residual(const Field2D& field, const Nonlinearity& nl,
                                         int n_prime);

/// Approximate bifurcation curve from the single basis function A(1-x^2)(1-y^2):
/// lambda ~ 3.2 A e^{-0.64 A}.
[[nodiscard]] double onepoint_lambda(double amplitude);

}  // namespace bratu::twod

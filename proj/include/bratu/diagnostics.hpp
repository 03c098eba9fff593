#pragma once

#include <optional>

#include "bratu/bratu1d.hpp"
#include "bratu/numerics.hpp"
#include "bratu/pde2d.hpp"

namespace bratu::diag {

/// Chebyshev coefficient profile of a solution.
///
/// The even sequence used for fitting is |a_0|, |a_2|, ... in 1D and the
/// diagonal |a_00|, |a_22|, ... in 2D. `plateau_index` is the coefficient
/// index where that sequence, followed from its largest entry onwards, stops
/// decaying (rounding floor). `fit_rate` is the least-squares slope of
/// log10|a| against index between the largest entry and the plateau, and is
/// only reported when at least four such points exist.
struct DecayReport {
  Matrix magnitudes;  ///< |a_k| as a column (1D) or |a_kl| (2D)
  double even_floor = 0.0;
  double odd_floor = 0.0;
  std::optional<double> fit_rate;
  double plateau = 0.0;
  int plateau_index = 0;
};

struct SymmetryReport {
  double rot90_dev = 0.0;
  double transpose_dev = 0.0;
  double reflect_x_dev = 0.0;
  double reflect_y_dev = 0.0;

  [[nodiscard]] double max_dev() const;
};

[[nodiscard]] DecayReport decay_report_1d(const Vector& grid_values);
[[nodiscard]] DecayReport decay_report_1d(const oned::Solution1D& solution);

/// Operates on the boundary-embedded field.
[[nodiscard]] DecayReport decay_report_2d(const Matrix& grid_values);
[[nodiscard]] DecayReport decay_report_2d(const twod::Field2D& field);

[[nodiscard]] SymmetryReport symmetry_report(const Matrix& interior);
[[nodiscard]] SymmetryReport symmetry_report(const twod::Field2D& field);

/// Average over the eight symmetries of the square.
[[nodiscard]] Matrix symmetrize(const Matrix& interior);

/// Deviation of a 1D grid function from even symmetry, max |u_j - u_{n-j}|.
[[nodiscard]] double reflection_deviation(const Vector& values);

}  // namespace bratu::diag

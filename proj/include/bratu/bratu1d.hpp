#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "bratu/chebyshev.hpp"
#include "bratu/newton.hpp"
#include "bratu/numerics.hpp"

// One-dimensional Bratu problem u'' + lambda e^u = 0 on [-L, L], u(+-L) = 0.
//
// Solutions are parametrized by their centre value A = u(0):
//   w(x) = A - 2 ln cosh(B x),  B = sqrt(lambda e^A / 2),
// and the boundary condition ties A to lambda through
//   e^{A/2} = cosh(sqrt(lambda e^A / 2) L).
namespace bratu::oned {

struct FoldPoint {
  double amplitude = 0.0;  ///< A*
  double lambda = 0.0;     ///< lambda*
};

struct BifurcationCurve {
  double half_width = 1.0;
  std::vector<std::pair<double, double>> samples;  ///< (A, lambda(A))
  FoldPoint fold;
};

enum class Branch { Small, Big, Unknown };
[[nodiscard]] const char* to_string(Branch branch);

struct Solution1D {
  Grid1D grid;
  Vector values;  ///< all n+1 grid values, boundary entries exactly 0
  double lambda = 0.0;
  Branch branch = Branch::Unknown;
  NewtonTrace trace;

  [[nodiscard]] double center_value() const;
};

/// Initial guesses for solve_1d.
struct ZeroGuess {};
/// A (1 - (x/L)^2)
struct OnePointGuess {
  double amplitude = 6.0;
};
/// Values on the full grid (n+1) or on the interior (n-1).
struct CustomGuess {
  Vector values;
};
using Guess1D = std::variant<ZeroGuess, OnePointGuess, CustomGuess>;

/// lambda such that the solution with centre value A meets u(+-L) = 0:
/// lambda = 2 arccosh(e^{A/2})^2 / (L^2 e^A).
[[nodiscard]] double lambda_of_A(double amplitude, double half_width = 1.0);

/// d lambda / dA, analytic.
[[nodiscard]] double dlambda_dA(double amplitude, double half_width = 1.0);

/// Closed-form solution with centre value A evaluated at x (within [-L, L]).
[[nodiscard]] Vector exact_solution(double amplitude, double half_width, const Vector& x);

/// Maximum of lambda_of_A over A > 0.
[[nodiscard]] FoldPoint critical_point(double half_width = 1.0);

/// Centre values of the two solutions for 0 < lambda < lambda*(L).
/// Throws NoSolution for lambda >= lambda*, InvalidArgument for lambda <= 0.
[[nodiscard]] std::pair<double, double> branch_amplitudes(double lambda, double half_width = 1.0);

/// `samples` points A_j = a_max * j / samples, j = 1..samples.
[[nodiscard]] BifurcationCurve bifurcation_curve(double half_width, int samples,
                                                 double a_max = 8.0);

/// Collocation solve of the interior system D2 u + lambda e^u = 0.
[[nodiscard]] Solution1D solve_1d(double lambda, const Grid1D& grid, const Guess1D& guess,
                                  const NewtonConfig& config = {});

/// Residual D2 u + lambda e^u on the interior for full-grid values u.
[[nodiscard]] Vector residual_1d(const Grid1D& grid, double lambda, const Vector& values);

struct Stability1D {
  bool stable = false;
  double mu_min = 0.0;
  EigenResult spectrum;
};

/// Spectrum of -d^2/dx^2 - lambda e^u with Dirichlet conditions about a
/// converged solution; stable iff the smallest real part is positive.
[[nodiscard]] Stability1D stability_1d(const Solution1D& solution);

}  // namespace bratu::oned

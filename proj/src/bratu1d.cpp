#include "bratu/bratu1d.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bratu/error.hpp"

namespace bratu::oned {

namespace {

void require_amplitude(double amplitude, const char* what) {
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
    throw InvalidArgument(std::string(what) + ": amplitude A must be positive and finite");
  }
}

void require_half_width(double half_width, const char* what) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw InvalidArgument(std::string(what) + ": half-width L must be positive and finite");
  }
}

// arccosh(e^{A/2}) written as asinh(sqrt(e^A - 1)), accurate as A -> 0.
double acosh_exp_half(double amplitude) { return std::asinh(std::sqrt(std::expm1(amplitude))); }

// d/dA arccosh(e^{A/2})
double acosh_exp_half_prime(double amplitude) {
  return std::exp(0.5 * amplitude) / (2.0 * std::sqrt(std::expm1(amplitude)));
}

// Zero of dlambda/dA up to the positive factor 2 c e^{-A} / L^2.
double fold_condition(double amplitude) {
  return 2.0 * acosh_exp_half_prime(amplitude) - acosh_exp_half(amplitude);
}

double fold_condition_prime(double amplitude) {
  const double em1 = std::expm1(amplitude);
  return -std::exp(0.5 * amplitude) / std::pow(em1, 1.5) - acosh_exp_half_prime(amplitude);
}

// Root of lambda_of_A(A, L) = target on [lo, hi], given opposite signs at the ends.
double bracketed_root(double target, double half_width, double lo, double hi) {
  auto g = [&](double a) { return a <= 0.0 ? -target : lambda_of_A(a, half_width) - target; };
  double g_lo = g(lo);
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = g(mid);
    if ((g_mid < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  double a = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double slope = dlambda_dA(a, half_width);
    if (std::abs(slope) < 1e-8) break;
    const double next = a - g(a) / slope;
    if (!(next > 0.0) || std::abs(g(next)) >= std::abs(g(a))) break;
    a = next;
  }
  return a;
}

}  // namespace

const char* to_string(Branch branch) {
  switch (branch) {
    case Branch::Small:
      return "small";
    case Branch::Big:
      return "big";
    case Branch::Unknown:
      return "unknown";
  }
  return "unknown";
}

double Solution1D::center_value() const {
  const Vector origin = Vector::Zero(1);
  return barycentric_resample(grid, values, origin)[0];
}

double lambda_of_A(double amplitude, double half_width) {
  require_amplitude(amplitude, "lambda_of_A");
  require_half_width(half_width, "lambda_of_A");
  const double c = acosh_exp_half(amplitude);
  return 2.0 * c * c * std::exp(-amplitude) / (half_width * half_width);
}

double dlambda_dA(double amplitude, double half_width) {
  require_amplitude(amplitude, "dlambda_dA");
  require_half_width(half_width, "dlambda_dA");
  const double c = acosh_exp_half(amplitude);
  return 2.0 * std::exp(-amplitude) * c * fold_condition(amplitude) / (half_width * half_width);
}

Vector exact_solution(double amplitude, double half_width, const Vector& x) {
  require_amplitude(amplitude, "exact_solution");
  const double lambda = lambda_of_A(amplitude, half_width);
  const double b = std::sqrt(0.5 * lambda * std::exp(amplitude));
  Vector w(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(std::abs(x[i]) <= half_width * (1.0 + 1e-14))) {
      throw InvalidArgument("exact_solution: evaluation point outside [-L, L]");
    }
    w[i] = amplitude - 2.0 * std::log(std::cosh(b * x[i]));
  }
  return w;
}

FoldPoint critical_point(double half_width) {
  require_half_width(half_width, "critical_point");
  auto lam = [half_width](double a) { return lambda_of_A(a, half_width); };

  // Golden-section search for the maximum on a bracket containing it.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.05;
  double hi = 10.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = lam(x1);
  double f2 = lam(x2);
  while (hi - lo > 1e-6) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = lam(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = lam(x1);
    }
  }

  // Newton on dlambda/dA = 0 (the L-independent factor).
  double a = 0.5 * (lo + hi);
  for (int it = 0; it < 50; ++it) {
    const double step = fold_condition(a) / fold_condition_prime(a);
    a -= step;
    if (std::abs(step) <= 1e-16 * a) break;
  }
  if (!(std::abs(dlambda_dA(a, half_width)) <= 1e-12)) {
    throw NumericalFailure("critical_point: Newton polish did not reach dlambda/dA = 0");
  }
  return {a, lam(a)};
}

std::pair<double, double> branch_amplitudes(double lambda, double half_width) {
  require_half_width(half_width, "branch_amplitudes");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("branch_amplitudes: lambda must be positive");
  }
  const FoldPoint fold = critical_point(half_width);
  if (lambda >= fold.lambda) {
    throw NoSolution("branch_amplitudes: no solution for lambda = " + std::to_string(lambda) +
                     " >= lambda* = " + std::to_string(fold.lambda));
  }

  const double small = bracketed_root(lambda, half_width, 0.0, fold.amplitude);

  double hi = 2.0 * fold.amplitude;
  while (lambda_of_A(hi, half_width) > lambda) {
    hi *= 2.0;
    if (hi > 1e4) throw NumericalFailure("branch_amplitudes: could not bracket the big root");
  }
  const double big = bracketed_root(lambda, half_width, fold.amplitude, hi);
  return {small, big};
}

BifurcationCurve bifurcation_curve(double half_width, int samples, double a_max) {
  require_half_width(half_width, "bifurcation_curve");
  if (samples < 1) throw InvalidArgument("bifurcation_curve: samples must be >= 1");
  require_amplitude(a_max, "bifurcation_curve");

  BifurcationCurve curve;
  curve.half_width = half_width;
  curve.fold = critical_point(half_width);
  curve.samples.reserve(static_cast<std::size_t>(samples));
  for (int j = 1; j <= samples; ++j) {
    const double a = a_max * j / samples;
    curve.samples.emplace_back(a, lambda_of_A(a, half_width));
  }
  return curve;
}

Vector residual_1d(const Grid1D& grid, double lambda, const Vector& values) {
  if (values.size() != grid.size()) throw InvalidArgument("residual_1d: values/grid mismatch");
  const DiffMatrix d2 = second_diff_matrix(grid);
  const Vector interior = values.segment(1, grid.interior_size());
  return d2.entries.middleRows(1, grid.interior_size()) * values +
         lambda * interior.array().exp().matrix();
}

Solution1D solve_1d(double lambda, const Grid1D& grid, const Guess1D& guess,
                    const NewtonConfig& config) {
  if (!std::isfinite(lambda)) throw InvalidArgument("solve_1d: lambda must be finite");
  if (grid.order() < 4) throw InvalidArgument("solve_1d: grid order must be >= 4");
  const Eigen::Index m = grid.interior_size();
  const Vector x = grid.interior_points();

  Vector u0(m);
  if (std::holds_alternative<ZeroGuess>(guess)) {
    u0.setZero();
  } else if (const auto* one = std::get_if<OnePointGuess>(&guess)) {
    const double l = grid.half_width();
    u0 = one->amplitude * (1.0 - (x.array() / l).square()).matrix();
  } else {
    const Vector& v = std::get<CustomGuess>(guess).values;
    if (v.size() == grid.size()) {
      u0 = v.segment(1, m);
    } else if (v.size() == m) {
      u0 = v;
    } else {
      throw InvalidArgument("solve_1d: custom guess must have n+1 or n-1 values");
    }
  }

  const Matrix d2 = *second_diff_matrix(grid).interior;
  auto residual = [&](const Vector& u) -> Vector {
    return d2 * u + lambda * u.array().exp().matrix();
  };
  auto jacobian = [&](const Vector& u) -> Matrix {
    Matrix j = d2;
    j.diagonal().array() += lambda * u.array().exp();
    return j;
  };

  NewtonResult result = newton_kantorovich(residual, jacobian, u0, config);

  Vector values = Vector::Zero(grid.size());
  values.segment(1, m) = result.solution;
  Solution1D sol{grid, std::move(values), lambda, Branch::Unknown, std::move(result.trace)};

  if (lambda > 0.0) {
    try {
      const auto [a_small, a_big] = branch_amplitudes(lambda, grid.half_width());
      const double center = sol.center_value();
      sol.branch = std::abs(center - a_small) <= std::abs(center - a_big) ? Branch::Small
                                                                          : Branch::Big;
    } catch (const NoSolution&) {
      sol.branch = Branch::Unknown;
    }
  }
  return sol;
}

Stability1D stability_1d(const Solution1D& solution) {
  if (!solution.trace.converged) {
    throw InvalidArgument("stability_1d: solution is not converged");
  }
  const Grid1D& grid = solution.grid;
  const Eigen::Index m = grid.interior_size();
  Matrix op = -*second_diff_matrix(grid).interior;
  op.diagonal().array() -= solution.lambda * solution.values.segment(1, m).array().exp();

  Stability1D result;
  result.spectrum = eig_general(op, false);
  result.mu_min = result.spectrum.values[0].real();
  result.stable = result.mu_min > 0.0;
  return result;
}

}  // namespace bratu::oned

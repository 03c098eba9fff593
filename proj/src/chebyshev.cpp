#include "bratu/chebyshev.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include <fftw3.h>

#include "bratu/error.hpp"

namespace bratu {

namespace {

constexpr double kPi = std::numbers::pi;

// FFTW's planner is not re-entrant; execution of a finished plan is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// DCT-I of length size: y_k = x_0 + (-1)^k x_{n} + 2 sum_{j=1}^{n-1} x_j cos(pi j k / n)
std::vector<double> redft00(std::vector<double> input) {
  const int size = static_cast<int>(input.size());
  std::vector<double> output(input.size());
  fftw_plan plan = nullptr;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_r2r_1d(size, input.data(), output.data(), FFTW_REDFT00, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw NumericalFailure("cheb_transform: FFTW planning failed");
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return output;
}

// cos(pi * m / n) with the argument reduced modulo 2n first.
double cos_pi_ratio(long long m, long long n) {
  const long long r = m % (2 * n);
  return std::cos(kPi * static_cast<double>(r) / static_cast<double>(n));
}

// 1D transform below this size goes through the direct sums.
constexpr Eigen::Index kFastTransformMinSize = 3;

Matrix interpolation_matrix(const Grid1D& grid, const Vector& targets) {
  const Eigen::Index size = grid.size();
  const int n = grid.order();
  const double L = grid.half_width();
  Vector weights(size);
  for (Eigen::Index j = 0; j < size; ++j) {
    const double delta = (j == 0 || j == n) ? 0.5 : 1.0;
    weights[j] = (j % 2 == 0) ? delta : -delta;
  }

  Matrix p = Matrix::Zero(targets.size(), size);
  for (Eigen::Index a = 0; a < targets.size(); ++a) {
    const double t = targets[a];
    if (!std::isfinite(t) || std::abs(t) > L * (1.0 + 1e-14)) {
      throw InvalidArgument("barycentric_resample: target " + std::to_string(t) +
                            " lies outside [-L, L]");
    }
    Eigen::Index hit = -1;
    for (Eigen::Index j = 0; j < size; ++j) {
      if (t == grid[j]) {
        hit = j;
        break;
      }
    }
    if (hit >= 0) {
      p(a, hit) = 1.0;
      continue;
    }
    double denom = 0.0;
    for (Eigen::Index j = 0; j < size; ++j) {
      const double term = weights[j] / (t - grid[j]);
      p(a, j) = term;
      denom += term;
    }
    p.row(a) /= denom;
  }
  return p;
}

}  // namespace

Grid1D cheb_points(int n, double half_width) {
  if (n < 1) throw InvalidArgument("cheb_points: order n must be >= 1");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw InvalidArgument("cheb_points: half-width L must be positive and finite");
  }
  // sin form keeps the set exactly antisymmetric and the endpoints exact.
  Vector points(n + 1);
  for (int j = 0; j <= n; ++j) {
    points[j] = half_width * std::sin(kPi * static_cast<double>(n - 2 * j) / (2.0 * n));
  }
  return Grid1D(n, half_width, std::move(points));
}

DiffMatrix diff_matrix(const Grid1D& grid) {
  const int n = grid.order();
  Matrix d = Matrix::Zero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    const double ci = (i == 0 || i == n) ? 2.0 : 1.0;
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      const double cj = (j == 0 || j == n) ? 2.0 : 1.0;
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      // x_i - x_j on the unit grid, written as a product of sines to avoid
      // cancellation between nearby cosines.
      const double gap = 2.0 * std::sin(kPi * (i + j) / (2.0 * n)) *
                         std::sin(kPi * (j - i) / (2.0 * n));
      d(i, j) = ci / cj * sign / gap;
    }
  }
  for (int i = 0; i <= n; ++i) d(i, i) = -d.row(i).sum();

  DiffMatrix result;
  result.order = 1;
  result.n = n;
  result.entries = d * (1.0 / grid.half_width());
  return result;
}

DiffMatrix second_diff_matrix(const Grid1D& grid) {
  const int n = grid.order();
  if (n < 2) throw InvalidArgument("second_diff_matrix: order n must be >= 2");
  const Grid1D unit = cheb_points(n, 1.0);
  const Matrix d1 = diff_matrix(unit).entries;
  const double scale = 1.0 / grid.half_width();

  DiffMatrix result;
  result.order = 2;
  result.n = n;
  result.entries = (d1 * d1) * (scale * scale);
  result.interior = result.entries.block(1, 1, n - 1, n - 1);
  return result;
}

Vector cheb_transform_direct(const Vector& values) {
  const Eigen::Index size = values.size();
  if (size < 2) throw InvalidArgument("cheb_transform: need at least 2 samples");
  const long long n = size - 1;
  Vector coeffs(size);
  for (long long k = 0; k <= n; ++k) {
    double sum = 0.0;
    for (long long j = 0; j <= n; ++j) {
      const double cj = (j == 0 || j == n) ? 0.5 : 1.0;
      sum += cj * values[j] * cos_pi_ratio(j * k, n);
    }
    const double ck = (k == 0 || k == n) ? 1.0 : 2.0;
    coeffs[k] = ck * sum / static_cast<double>(n);
  }
  return coeffs;
}

Vector inverse_cheb_transform_direct(const Vector& coeffs) {
  const Eigen::Index size = coeffs.size();
  if (size < 2) throw InvalidArgument("inverse_cheb_transform: need at least 2 coefficients");
  const long long n = size - 1;
  Vector values(size);
  for (long long j = 0; j <= n; ++j) {
    double sum = 0.0;
    for (long long k = 0; k <= n; ++k) sum += coeffs[k] * cos_pi_ratio(j * k, n);
    values[j] = sum;
  }
  return values;
}

Vector cheb_transform(const Vector& values) {
  const Eigen::Index size = values.size();
  if (size < 2) throw InvalidArgument("cheb_transform: need at least 2 samples");
  if (size < kFastTransformMinSize) return cheb_transform_direct(values);

  const double n = static_cast<double>(size - 1);
  std::vector<double> y = redft00(std::vector<double>(values.data(), values.data() + size));
  Vector coeffs(size);
  for (Eigen::Index k = 0; k < size; ++k) coeffs[k] = y[static_cast<std::size_t>(k)] / n;
  coeffs[0] *= 0.5;
  coeffs[size - 1] *= 0.5;
  return coeffs;
}

Vector cheb_transform(std::span<const double> values) {
  return cheb_transform(Vector(Eigen::Map<const Vector>(values.data(),
                                                        static_cast<Eigen::Index>(values.size()))));
}

Vector inverse_cheb_transform(const Vector& coeffs) {
  const Eigen::Index size = coeffs.size();
  if (size < 2) throw InvalidArgument("inverse_cheb_transform: need at least 2 coefficients");
  if (size < kFastTransformMinSize) return inverse_cheb_transform_direct(coeffs);

  std::vector<double> x(coeffs.data(), coeffs.data() + size);
  for (Eigen::Index k = 1; k + 1 < size; ++k) x[static_cast<std::size_t>(k)] *= 0.5;
  std::vector<double> y = redft00(std::move(x));
  return Eigen::Map<const Vector>(y.data(), size);
}

namespace {

template <typename Transform>
Matrix apply_2d(const Matrix& input, Transform&& transform, const char* what) {
  if (input.rows() != input.cols()) {
    throw InvalidArgument(std::string(what) + ": input must be square, got " +
                          std::to_string(input.rows()) + "x" + std::to_string(input.cols()));
  }
  Matrix out(input.rows(), input.cols());
  for (Eigen::Index c = 0; c < input.cols(); ++c) out.col(c) = transform(Vector(input.col(c)));
  for (Eigen::Index r = 0; r < input.rows(); ++r) {
    out.row(r) = transform(Vector(out.row(r).transpose())).transpose();
  }
  return out;
}

}  // namespace

Matrix cheb_transform_2d(const Matrix& values) {
  return apply_2d(values, [](const Vector& v) { return cheb_transform(v); }, "cheb_transform_2d");
}

Matrix inverse_cheb_transform_2d(const Matrix& coeffs) {
  return apply_2d(coeffs, [](const Vector& v) { return inverse_cheb_transform(v); },
                  "inverse_cheb_transform_2d");
}

Vector barycentric_resample(const Grid1D& grid, const Vector& values, const Vector& targets) {
  if (values.size() != grid.size()) {
    throw InvalidArgument("barycentric_resample: values length does not match grid");
  }
  return interpolation_matrix(grid, targets) * values;
}

Matrix barycentric_resample_2d(const Grid1D& grid, const Matrix& values, const Vector& x_targets,
                               const Vector& y_targets) {
  if (values.rows() != grid.size() || values.cols() != grid.size()) {
    throw InvalidArgument("barycentric_resample_2d: values shape does not match grid");
  }
  const Matrix px = interpolation_matrix(grid, x_targets);
  const Matrix py = interpolation_matrix(grid, y_targets);
  return px * values * py.transpose();
}

}  // namespace bratu

#include "bratu/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "bratu/chebyshev.hpp"

namespace bratu::diag {

namespace {

struct Profile {
  std::optional<double> fit_rate;
  double plateau = 0.0;
  int plateau_index = 0;
};

// `magnitudes[m]` is the coefficient at index stride * m.
Profile fit_profile(const std::vector<double>& magnitudes, int stride) {
  Profile out;
  const std::size_t count = magnitudes.size();
  if (count == 0) return out;

  // Anything below rounding level relative to the largest coefficient is
  // treated as the same floor, so exact zeros don't look like decay.
  const double top = *std::max_element(magnitudes.begin(), magnitudes.end());
  const double floor = std::max(top * std::numeric_limits<double>::epsilon(), 1e-300);
  std::vector<double> logs(count);
  for (std::size_t m = 0; m < count; ++m) logs[m] = std::log10(std::max(magnitudes[m], floor));

  // Five-point forward moving maximum; the plateau starts after its last
  // drop of at least 0.1 per coefficient index.
  std::vector<double> window(count);
  for (std::size_t m = 0; m < count; ++m) {
    const std::size_t end = std::min(count, m + 5);
    window[m] = *std::max_element(logs.begin() + static_cast<std::ptrdiff_t>(m),
                                  logs.begin() + static_cast<std::ptrdiff_t>(end));
  }
  // Leading coefficients may grow (|a_0| < |a_2| is common); decay is
  // measured from the largest one.
  const auto start = static_cast<std::size_t>(
      std::max_element(logs.begin(), logs.end()) - logs.begin());
  std::size_t plateau = start;
  for (std::size_t m = count - 1; m > start; --m) {
    if (window[m - 1] - window[m] >= 0.1 * stride) {
      plateau = m + 1;
      break;
    }
  }

  if (plateau >= start + 4) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t m = start; m < plateau; ++m) {
      const double x = static_cast<double>(stride) * static_cast<double>(m);
      sx += x;
      sy += logs[m];
      sxx += x * x;
      sxy += x * logs[m];
    }
    const double p = static_cast<double>(plateau - start);
    out.fit_rate = (p * sxy - sx * sy) / (p * sxx - sx * sx);
  }

  if (plateau < count) {
    out.plateau = *std::max_element(magnitudes.begin() + static_cast<std::ptrdiff_t>(plateau),
                                    magnitudes.end());
    out.plateau_index = stride * static_cast<int>(plateau);
  } else {
    out.plateau = magnitudes.back();
    out.plateau_index = stride * static_cast<int>(count - 1);
  }
  return out;
}

void apply(DecayReport& report, const Profile& profile) {
  report.fit_rate = profile.fit_rate;
  report.plateau = profile.plateau;
  report.plateau_index = profile.plateau_index;
}

Matrix rot90(const Matrix& u) {
  const Eigen::Index m = u.rows();
  Matrix r(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) r(i, j) = u(m - 1 - j, i);
  }
  return r;
}

double sup_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

double SymmetryReport::max_dev() const {
  return std::max({rot90_dev, transpose_dev, reflect_x_dev, reflect_y_dev});
}

DecayReport decay_report_1d(const Vector& grid_values) {
  const Vector coeffs = cheb_transform(grid_values);
  DecayReport report;
  report.magnitudes = coeffs.cwiseAbs();

  std::vector<double> evens;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    const double a = std::abs(coeffs[k]);
    if (k % 2 == 0) {
      evens.push_back(a);
      if (k > 0) report.even_floor = std::max(report.even_floor, a);
    } else {
      report.odd_floor = std::max(report.odd_floor, a);
    }
  }
  apply(report, fit_profile(evens, 2));
  return report;
}

DecayReport decay_report_1d(const oned::Solution1D& solution) {
  return decay_report_1d(solution.values);
}

DecayReport decay_report_2d(const Matrix& grid_values) {
  const Matrix coeffs = cheb_transform_2d(grid_values);
  DecayReport report;
  report.magnitudes = coeffs.cwiseAbs();

  for (Eigen::Index k = 0; k < coeffs.rows(); ++k) {
    for (Eigen::Index l = 0; l < coeffs.cols(); ++l) {
      const double a = std::abs(coeffs(k, l));
      if (k % 2 == 1 || l % 2 == 1) {
        report.odd_floor = std::max(report.odd_floor, a);
      } else if (k > 0 || l > 0) {
        report.even_floor = std::max(report.even_floor, a);
      }
    }
  }
  std::vector<double> diagonal;
  for (Eigen::Index k = 0; k < coeffs.rows(); k += 2) diagonal.push_back(std::abs(coeffs(k, k)));
  apply(report, fit_profile(diagonal, 2));
  return report;
}

DecayReport decay_report_2d(const twod::Field2D& field) { return decay_report_2d(field.embedded()); }

SymmetryReport symmetry_report(const Matrix& interior) {
  SymmetryReport report;
  if (interior.size() == 0) return report;
  report.rot90_dev = sup_diff(interior, rot90(interior));
  report.transpose_dev = sup_diff(interior, interior.transpose());
  report.reflect_x_dev = sup_diff(interior, interior.colwise().reverse());
  report.reflect_y_dev = sup_diff(interior, interior.rowwise().reverse());
  return report;
}

SymmetryReport symmetry_report(const twod::Field2D& field) { return symmetry_report(field.interior); }

Matrix symmetrize(const Matrix& interior) {
  Matrix sum = Matrix::Zero(interior.rows(), interior.cols());
  Matrix r = interior;
  for (int turn = 0; turn < 4; ++turn) {
    sum += r;
    sum += r.transpose();
    r = rot90(r);
  }
  return sum / 8.0;
}

double reflection_deviation(const Vector& values) {
  if (values.size() == 0) return 0.0;
  return (values - values.reverse()).cwiseAbs().maxCoeff();
}

}  // namespace bratu::diag

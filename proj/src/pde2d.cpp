#include "bratu/pde2d.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "bratu/error.hpp"

namespace bratu::twod {

Vector Field2D::as_vector() const {
  return Eigen::Map<const Vector>(interior.data(), interior.size());
}

Matrix Field2D::embedded() const {
  Matrix full = Matrix::Zero(grid.size(), grid.size());
  full.block(1, 1, interior.rows(), interior.cols()) = interior;
  return full;
}

double Field2D::u_max() const { return interior.maxCoeff(); }

Field2D field_from_vector(const Grid1D& grid, const Vector& values, double lambda) {
  const Eigen::Index m = grid.interior_size();
  if (values.size() != m * m) {
    throw InvalidArgument("field_from_vector: expected " + std::to_string(m * m) + " values, got " +
                          std::to_string(values.size()));
  }
  return Field2D{grid, Eigen::Map<const Matrix>(values.data(), m, m), lambda, std::nullopt};
}

Nonlinearity make_nonlinearity(const std::string& name, double epsilon) {
  if (name == "exp") {
    return {name, [](double lam, double u) { return lam * std::exp(u); },
            [](double lam, double u) { return lam * std::exp(u); }, 0.0};
  }
  if (name == "cosh") {
    return {name, [](double lam, double u) { return lam * std::cosh(u); },
            [](double lam, double u) { return lam * std::sinh(u); }, 0.0};
  }
  if (name == "sinh") {
    return {name, [](double lam, double u) { return lam * std::sinh(u); },
            [](double lam, double u) { return lam * std::cosh(u); }, 0.0};
  }
  if (name == "gelfand") {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
      throw InvalidArgument("make_nonlinearity: gelfand requires 0 < epsilon < 1");
    }
    auto denominator = [epsilon](double u) {
      const double d = 1.0 + epsilon * u;
      if (!(d > 1e-8)) {
        throw SingularNonlinearity("gelfand nonlinearity: 1 + eps*u <= 1e-8 at u = " +
                                   std::to_string(u));
      }
      return d;
    };
    return {name,
            [denominator](double lam, double u) { return lam * std::exp(u / denominator(u)); },
            [denominator](double lam, double u) {
              const double d = denominator(u);
              return lam * std::exp(u / d) / (d * d);
            },
            epsilon};
  }
  throw InvalidArgument("make_nonlinearity: unknown nonlinearity '" + name + "'");
}

Operator2D assemble_laplacian(const Grid1D& grid) {
  if (grid.order() < 3) throw InvalidArgument("assemble_laplacian: grid order must be >= 3");
  const Matrix d2 = *second_diff_matrix(grid).interior;
  const Eigen::Index m = d2.rows();
  const Matrix id = Matrix::Identity(m, m);
  Matrix lap = Eigen::kroneckerProduct(id, d2).eval();
  lap += Eigen::kroneckerProduct(d2, id).eval();
  return Operator2D{grid, std::move(lap), m};
}

EigenResult laplacian_eigs(const Operator2D& op, Eigen::Index k, bool want_vectors) {
  const Eigen::Index total = op.matrix.rows();
  if (k < 1 || k > total) {
    throw InvalidArgument("laplacian_eigs: k must lie in [1, " + std::to_string(total) + "]");
  }
  const EigenResult all = eig_general(-op.matrix, want_vectors);
  EigenResult first;
  first.values = all.values.head(k);
  if (all.vectors) first.vectors = all.vectors->leftCols(k);
  return first;
}

EigenResult laplacian_eigs(const Grid1D& grid, Eigen::Index k) {
  return laplacian_eigs(assemble_laplacian(grid), k, true);
}

Field2D eigenfunction_field(const Grid1D& grid, const EigenResult& eigs, Eigen::Index index) {
  if (!eigs.vectors) throw InvalidArgument("eigenfunction_field: eigenvectors were not computed");
  if (index < 0 || index >= eigs.vectors->cols()) {
    throw InvalidArgument("eigenfunction_field: index out of range");
  }
  const Vector v = eigs.vectors->col(index).real();
  return field_from_vector(grid, v);
}

Field2D guess_eigenfunction(const Grid1D& grid, double amplitude) {
  if (!(amplitude > 0.0)) throw InvalidArgument("guess_eigenfunction: amplitude must be > 0");
  const EigenResult eigs = laplacian_eigs(assemble_laplacian(grid), 1, true);
  Field2D field = eigenfunction_field(grid, eigs, 0);
  if (field.interior.sum() < 0.0) field.interior = -field.interior;
  field.interior *= amplitude / field.interior.maxCoeff();
  return field;
}

Field2D guess_onepoint(const Grid1D& grid, double amplitude) {
  const Vector x = grid.interior_points() / grid.half_width();
  const Vector bump = (1.0 - x.array().square()).matrix();
  return Field2D{grid, amplitude * Matrix(bump * bump.transpose()), 0.0, std::nullopt};
}

Field2D solve_2d(double lambda, const Nonlinearity& nl, const Operator2D& op,
                 const Field2D& guess, const NewtonConfig& config) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("solve_2d: lambda must be finite and >= 0");
  }
  if (!(guess.grid == op.grid)) throw InvalidArgument("solve_2d: guess lives on a different grid");

  const Matrix& lap = op.matrix;
  auto residual = [&](const Vector& u) -> Vector {
    Vector f = lap * u;
    for (Eigen::Index i = 0; i < u.size(); ++i) f[i] += nl.value(lambda, u[i]);
    return f;
  };
  auto jacobian = [&](const Vector& u) -> Matrix {
    Matrix j = lap;
    for (Eigen::Index i = 0; i < u.size(); ++i) j(i, i) += nl.derivative(lambda, u[i]);
    return j;
  };

  NewtonResult result = newton_kantorovich(residual, jacobian, guess.as_vector(), config);
  Field2D field = field_from_vector(op.grid, result.solution, lambda);
  field.trace = std::move(result.trace);
  return field;
}

Field2D solve_2d(double lambda, const Nonlinearity& nl, const Grid1D& grid, const Field2D& guess,
                 const NewtonConfig& config) {
  return solve_2d(lambda, nl, assemble_laplacian(grid), guess, config);
}

double cross_grid_residual(const Field2D& field, const Nonlinearity& nl, int n_prime) {
  const Grid1D fine = cheb_points(n_prime, field.grid.half_width());
  const Vector targets = fine.interior_points();
  const Matrix resampled =
      barycentric_resample_2d(field.grid, field.embedded(), targets, targets);
  const Field2D moved{fine, resampled, field.lambda, std::nullopt};
  const Operator2D op = assemble_laplacian(fine);
  Vector r = op.matrix * moved.as_vector();
  const Vector u = moved.as_vector();
  for (Eigen::Index i = 0; i < r.size(); ++i) r[i] += nl.value(field.lambda, u[i]);
  return inf_norm(r);
}

double onepoint_lambda(double amplitude) {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw InvalidArgument("onepoint_lambda: amplitude must be finite and >= 0");
  }
  return 3.2 * amplitude * std::exp(-0.64 * amplitude);
}

}  // namespace bratu::twod

#include "bratu/newton.hpp"

#include <cmath>

namespace bratu {

void NewtonConfig::validate() const {
  if (!(tol_update > 0.0)) throw InvalidArgument("NewtonConfig: tol_update must be > 0");
  if (!(tol_residual > 0.0)) throw InvalidArgument("NewtonConfig: tol_residual must be > 0");
  if (max_iter < 1) throw InvalidArgument("NewtonConfig: max_iter must be >= 1");
}

const char* to_string(NewtonError::Kind kind) {
  switch (kind) {
    case NewtonError::Kind::SingularJacobian:
      return "singular-jacobian";
    case NewtonError::Kind::NonConvergence:
      return "non-convergence";
    case NewtonError::Kind::Divergence:
      return "divergence";
  }
  return "unknown";
}

NewtonResult newton_kantorovich(const ResidualFn& residual, const JacobianFn& jacobian,
                                const Vector& u0, const NewtonConfig& config) {
  config.validate();
  if (u0.size() == 0) throw InvalidArgument("newton_kantorovich: empty initial guess");

  NewtonTrace trace;
  Vector u = u0;
  Vector f = residual(u);
  if (f.size() != u.size()) {
    throw InvalidArgument("newton_kantorovich: residual length does not match unknowns");
  }
  trace.initial_residual = inf_norm(f);
  if (!std::isfinite(trace.initial_residual)) {
    throw NewtonError(NewtonError::Kind::Divergence,
                      "newton_kantorovich: residual of the initial guess is not finite", trace, u);
  }

  for (int k = 0; k < config.max_iter; ++k) {
    const Matrix j = jacobian(u);
    if (j.rows() != u.size() || j.cols() != u.size()) {
      throw InvalidArgument("newton_kantorovich: Jacobian shape does not match unknowns");
    }
    Vector delta;
    try {
      delta = lu_solve(j, -f);
    } catch (const SingularMatrix& e) {
      throw NewtonError(NewtonError::Kind::SingularJacobian,
                        std::string("newton_kantorovich: ") + e.what(), trace, u);
    } catch (const InvalidArgument&) {
      // lu_solve rejects non-finite matrices; that only happens once the
      // iterate has blown up.
      throw NewtonError(NewtonError::Kind::Divergence,
                        "newton_kantorovich: Jacobian is not finite", trace, u);
    }
    u += delta;
    const double step = inf_norm(delta);
    if (!u.allFinite() || !std::isfinite(step)) {
      trace.update_norms.push_back(step);
      trace.residual_norms.push_back(std::nan(""));
      trace.iterations = k + 1;
      throw NewtonError(NewtonError::Kind::Divergence,
                        "newton_kantorovich: iterate became non-finite", trace, u);
    }
    f = residual(u);
    const double res = inf_norm(f);
    trace.update_norms.push_back(step);
    trace.residual_norms.push_back(res);
    trace.iterations = k + 1;
    if (!std::isfinite(res)) {
      throw NewtonError(NewtonError::Kind::Divergence,
                        "newton_kantorovich: residual became non-finite", trace, u);
    }
    if (step <= config.tol_update || res <= config.tol_residual) {
      trace.converged = true;
      return {std::move(u), std::move(trace)};
    }
  }
  throw NewtonError(NewtonError::Kind::NonConvergence,
                    "newton_kantorovich: no convergence after " +
                        std::to_string(config.max_iter) + " iterations",
                    trace, u);
}

double convergence_order_estimate(const NewtonTrace& trace) {
  std::vector<double> usable;
  for (double d : trace.update_norms) {
    if (std::isfinite(d) && d > 1e-14) usable.push_back(d);
  }
  if (usable.size() < 3) {
    throw InsufficientData("convergence_order_estimate: fewer than 3 update norms above 1e-14");
  }
  const std::size_t k = usable.size() - 2;
  const double num = std::log(usable[k + 1] / usable[k]);
  const double den = std::log(usable[k] / usable[k - 1]);
  if (den == 0.0) throw InsufficientData("convergence_order_estimate: stagnating update norms");
  return num / den;
}

}  // namespace bratu

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bratu/error.hpp"
#include "bratu/numerics.hpp"

namespace bratu {

struct NewtonConfig {
  double tol_update = 1e-12;    ///< stop when ||delta_k||_inf <= tol_update
  double tol_residual = 1e-10;  ///< or when ||F(u_{k+1})||_inf <= tol_residual
  int max_iter = 25;

  /// Throws InvalidArgument for non-positive tolerances or max_iter < 1.
  void validate() const;
};

/// One entry per Newton step k = 0..iterations-1:
/// update_norms[k] = ||delta_k||_inf, residual_norms[k] = ||F(u_k + delta_k)||_inf.
struct NewtonTrace {
  std::vector<double> update_norms;
  std::vector<double> residual_norms;
  double initial_residual = 0.0;  ///< ||F(u_0)||_inf
  int iterations = 0;
  bool converged = false;
};

/// Thrown by newton_kantorovich; always carries the trace so far.
class NewtonError : public NumericalError {
 public:
  enum class Kind { SingularJacobian, NonConvergence, Divergence };

  NewtonError(Kind kind, const std::string& message, NewtonTrace trace, Vector last_iterate)
      : NumericalError(message),
        kind_(kind),
        trace_(std::move(trace)),
        last_iterate_(std::move(last_iterate)) {}

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] const NewtonTrace& trace() const { return trace_; }
  [[nodiscard]] const Vector& last_iterate() const { return last_iterate_; }

 private:
  Kind kind_;
  NewtonTrace trace_;
  Vector last_iterate_;
};

[[nodiscard]] const char* to_string(NewtonError::Kind kind);

using ResidualFn = std::function<Vector(const Vector&)>;
using JacobianFn = std::function<Matrix(const Vector&)>;

struct NewtonResult {
  Vector solution;
  NewtonTrace trace;
};

/// Undamped Newton iteration u_{k+1} = u_k + delta_k with J(u_k) delta_k = -F(u_k).
[[nodiscard]] NewtonResult newton_kantorovich(const ResidualFn& residual,
                                              const JacobianFn& jacobian, const Vector& u0,
                                              const NewtonConfig& config = {});

/// Local convergence order p from the last three update norms above 1e-14:
/// p = log(d_{k+1}/d_k) / log(d_k/d_{k-1}). Throws InsufficientData.
[[nodiscard]] double convergence_order_estimate(const NewtonTrace& trace);

}  // namespace bratu

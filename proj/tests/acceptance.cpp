// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "bratu/bratu1d.hpp"
#include "bratu/chebyshev.hpp"
#include "bratu/diagnostics.hpp"
#include "bratu/newton.hpp"
#include "bratu/pde2d.hpp"
#include "oracles.hpp"

using namespace bratu;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [x] " << what;
    }
  }
  template <typename T>
  void note(const char* key, T value) {
    detail << " " << key << "=" << value;
  }
};

int failures = 0;

void criterion(int id, const char* title, double budget_seconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  out.detail.precision(16);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.check(false, std::string("exception: ") + e.what());
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.check(elapsed < budget_seconds, "runtime over " + std::to_string(budget_seconds) + " s");
  if (!out.pass) ++failures;
  std::printf("[%s] %2d %s (%.3f s):%s\n", out.pass ? "PASS" : "FAIL", id, title, elapsed, out.detail.str().c_str());
  std::fflush(stdout);
}

Vector flatten(const Matrix& u) { return Eigen::Map<const Vector>(u.data(), u.size()); }

const Grid1D& grid16() {
  static const Grid1D g = cheb_points(16, 1.0);
  return g;
}

const twod::Field2D& small2d() {
  static const twod::Field2D f =
      twod::solve_2d(0.5, twod::make_nonlinearity("exp"), grid16(), twod::guess_eigenfunction(grid16(), 0.1));
  return f;
}

const twod::Field2D& big2d() {
  static const twod::Field2D f =
      twod::solve_2d(0.5, twod::make_nonlinearity("exp"), grid16(), twod::guess_onepoint(grid16(), 6.0));
  return f;
}

}  // namespace

int main() {
  criterion(1, "1D fold, L = 1", 1.0, [](Outcome& o) {
    const oned::FoldPoint f = oned::critical_point(1.0);
    o.note("A*", f.amplitude);
    o.note("lambda*", f.lambda);
    o.check(std::abs(f.amplitude - 1.187331536443172) <= 1e-8, "A* within 1e-8 of 1.187331536443172");
    o.check(std::abs(f.lambda - 0.8784576797812903) <= 1e-10, "lambda* within 1e-10 of 0.8784576797812903");
    o.check(std::abs(f.lambda - 0.8786312538512331) <= 2e-4, "0.8786312538512331 within 2e-4");
  });

  criterion(2, "fold scaling in L", 1.0, [](Outcome& o) {
    const double base = oned::critical_point(1.0).lambda;
    const double half = oned::critical_point(0.5).lambda;
    const double two = oned::critical_point(2.0).lambda;
    o.note("lambda*(1/2)", half);
    o.note("lambda*(2)", two);
    o.check(std::abs(half - 4.0 * base) <= 1e-10, "lambda*(1/2) = 4 lambda*(1)");
    o.check(std::abs(two - base / 4.0) <= 1e-10, "lambda*(2) = lambda*(1)/4");
    o.check(std::abs(half - 3.51360308) <= 3e-4, "3.51360308 within 3e-4");
    o.check(std::abs(two - 0.2196644) <= 1e-4, "0.2196644 within 1e-4");
  });

  criterion(3, "1D dual solutions, lambda = 0.25, n = 32", 1.0, [](Outcome& o) {
    const Grid1D g = cheb_points(32, 1.0);
    const auto [a_small, a_big] = oned::branch_amplitudes(0.25);
    const auto small = oned::solve_1d(0.25, g, oned::ZeroGuess{});
    const auto big = oned::solve_1d(0.25, g, oned::OnePointGuess{6.0});
    const double es = oracle::sup(Vector(small.values - oned::exact_solution(a_small, 1.0, g.points())));
    const double eb = oracle::sup(Vector(big.values - oned::exact_solution(a_big, 1.0, g.points())));
    o.note("u0_small", small.center_value());
    o.note("u0_big", big.center_value());
    o.note("err_small", es);
    o.note("err_big", eb);
    o.check(small.trace.converged && big.trace.converged, "both converge");
    o.check(std::abs(small.center_value() - a_small) <= 1e-8, "u(0) = A_small");
    o.check(std::abs(big.center_value() - a_big) <= 1e-8, "u(0) = A_big");
    o.check(es <= 1e-8 && eb <= 1e-8, "grid values match the closed form");
  });

  criterion(4, "1D stability, lambda = 0.25", 1.0, [](Outcome& o) {
    const Grid1D g = cheb_points(32, 1.0);
    const double ms = oned::stability_1d(oned::solve_1d(0.25, g, oned::ZeroGuess{})).mu_min;
    const double mb = oned::stability_1d(oned::solve_1d(0.25, g, oned::OnePointGuess{6.0})).mu_min;
    o.note("mu_small", ms);
    o.note("mu_big", mb);
    o.check(ms > 0.0, "small branch stable");
    o.check(mb < 0.0, "big branch unstable");
  });

  criterion(5, "2D Laplacian eigenvalues, n = 24, side pi", 30.0, [](Outcome& o) {
    const EigenResult r = twod::laplacian_eigs(twod::assemble_laplacian(cheb_points(24, M_PI / 2.0)), 10, false);
    const double expected[] = {2, 5, 5, 8, 10, 10, 13, 13, 17, 17};
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) worst = std::max(worst, std::abs(r.values[i] - std::complex<double>(expected[i], 0)));
    o.note("max_err", worst);
    o.check(worst <= 1e-8, "first ten within 1e-8");
  });

  criterion(6, "2D small solution, lambda = 0.5", 30.0, [](Outcome& o) {
    const Grid1D g20 = cheb_points(20, 1.0);
    const auto f20 = twod::solve_2d(0.5, twod::make_nonlinearity("exp"), g20, twod::guess_eigenfunction(g20, 0.1));
    const double u16 = small2d().u_max();
    o.note("u_max16", u16);
    o.note("u_max20", f20.u_max());
    o.note("iterations", small2d().trace->iterations);
    o.check(std::abs(u16 - 0.1865174060688610) <= 1e-6, "u_max within 1e-6 of 0.1865174060688610");
    o.check(std::abs(u16 - f20.u_max()) <= 5e-6, "n = 16 and n = 20 agree to 5e-6");
    o.check(small2d().trace->iterations <= 6, "at most 6 iterations");
  });

  criterion(7, "2D big solution, lambda = 0.5, n = 16", 30.0, [](Outcome& o) {
    o.note("u_max", big2d().u_max());
    o.note("iterations", big2d().trace->iterations);
    o.check(std::abs(big2d().u_max() - 4.677164395529806) <= 1e-4, "u_max within 1e-4 of 4.677164395529806");
    o.check(big2d().trace->iterations <= 10, "at most 10 iterations");
  });

  criterion(8, "2D symmetry", 30.0, [](Outcome& o) {
    const double s = diag::symmetry_report(small2d()).max_dev();
    const double b = diag::symmetry_report(big2d()).max_dev();
    o.note("small_dev", s);
    o.note("big_dev", b);
    o.check(s <= 1e-9 && b <= 1e-9, "all deviations within 1e-9");
  });

  criterion(9, "parity and decay", 30.0, [](Outcome& o) {
    const Grid1D g = cheb_points(32, 1.0);
    const auto r1s = diag::decay_report_1d(oned::solve_1d(0.25, g, oned::ZeroGuess{}));
    const auto r1b = diag::decay_report_1d(oned::solve_1d(0.25, g, oned::OnePointGuess{6.0}));
    const auto r2s = diag::decay_report_2d(small2d());
    const auto r2b = diag::decay_report_2d(big2d());
    const double odd = std::max({r1s.odd_floor, r1b.odd_floor, r2s.odd_floor, r2b.odd_floor});
    o.note("max_odd_floor", odd);
    o.check(odd <= 1e-12, "odd floors within 1e-12");
    bool negative = true;
    for (const auto* r : {&r1s, &r1b, &r2s, &r2b}) negative = negative && r->fit_rate && *r->fit_rate < 0.0;
    o.check(negative, "all fit rates negative");
    if (r1s.fit_rate && r1b.fit_rate) {
      o.note("fit_1d_small", *r1s.fit_rate);
      o.note("fit_1d_big", *r1b.fit_rate);
      o.check(*r1b.fit_rate > *r1s.fit_rate, "1D big decays more slowly than small");
    }
  });

  criterion(10, "Newton convergence order", 1.0, [](Outcome& o) {
    const auto s = oned::solve_1d(0.25, cheb_points(32, 1.0), oned::ZeroGuess{});
    const double p = convergence_order_estimate(s.trace);
    o.note("p", p);
    o.check(p >= 1.8, "p >= 1.8");
  });

  criterion(11, "Gelfand limit and cosh/sinh variants", 30.0, [](Outcome& o) {
    const auto& g = grid16();
    const auto gf = twod::solve_2d(0.5, twod::make_nonlinearity("gelfand", 1e-6), g, twod::guess_eigenfunction(g, 0.1));
    const double diff = oracle::sup(Matrix(gf.interior - small2d().interior));
    o.note("gelfand_vs_exp", diff);
    o.check(diff <= 1e-5, "gelfand(1e-6) within 1e-5 of exp");
    for (const char* name : {"cosh", "sinh"}) {
      const auto f = twod::solve_2d(0.5, twod::make_nonlinearity(name), g, twod::guess_eigenfunction(g, 0.1));
      const auto sym = diag::symmetry_report(f).max_dev();
      const auto decay = diag::decay_report_2d(f);
      o.note(name, f.u_max());
      o.check(f.trace->converged, std::string(name) + " converges");
      o.check(sym <= 1e-9, std::string(name) + " symmetric");
      o.check(decay.odd_floor <= 1e-12, std::string(name) + " odd floor");
      o.check(decay.fit_rate && *decay.fit_rate < 0.0, std::string(name) + " fit rate negative");
    }
  });

  criterion(12, "randomized property suites", 60.0, [](Outcome& o) {
    oracle::Generator gen(20261014u);
    const int cases = 100;

    int jac_fail = 0;
    const twod::Operator2D op = twod::assemble_laplacian(cheb_points(8, 1.0));
    const twod::Nonlinearity nls[] = {twod::make_nonlinearity("exp"), twod::make_nonlinearity("cosh"),
                                      twod::make_nonlinearity("sinh"), twod::make_nonlinearity("gelfand", 0.1)};
    const Grid1D g1 = cheb_points(16, 1.0);
    const Matrix d2 = *second_diff_matrix(g1).interior;
    for (int t = 0; t < cases; ++t) {
      const double h = 1e-6;
      const int which = t % 5;
      Vector u, v, fd, jv;
      double scale;
      if (which == 4) {
        u = gen.vector(d2.rows(), -1.0, 3.0);
        v = gen.vector(d2.rows());
        auto f = [&](const Vector& w) {
          Vector full = Vector::Zero(w.size() + 2);
          full.segment(1, w.size()) = w;
          return oned::residual_1d(g1, 0.5, full);
        };
        const Matrix j = d2 + Matrix(0.5 * Vector(u.array().exp()).asDiagonal());
        fd = (f(u + h * v) - f(u - h * v)) / (2 * h);
        jv = j * v;
        scale = inf_norm(j);
      } else {
        const auto& nl = nls[which];
        u = gen.vector(op.matrix.rows(), -1.0, 3.0);
        v = gen.vector(op.matrix.rows());
        auto f = [&](const Vector& w) {
          Vector r = op.matrix * w;
          for (Eigen::Index i = 0; i < w.size(); ++i) r[i] += nl.value(0.5, w[i]);
          return r;
        };
        Matrix j = op.matrix;
        for (Eigen::Index i = 0; i < u.size(); ++i) j(i, i) += nl.derivative(0.5, u[i]);
        fd = (f(u + h * v) - f(u - h * v)) / (2 * h);
        jv = j * v;
        scale = inf_norm(j);
      }
      if (inf_norm(Vector(fd - jv)) > 1e-6 * scale) ++jac_fail;
    }

    int kron_fail = 0;
    for (int t = 0; t < cases; ++t) {
      const Grid1D g = cheb_points(gen.integer(3, 16), gen.uniform(0.5, 2.0));
      const Matrix dd = *second_diff_matrix(g).interior;
      const Matrix u = gen.matrix(dd.rows(), dd.rows());
      const Vector lhs = twod::assemble_laplacian(g).matrix * flatten(u);
      const Vector rhs = flatten(Matrix(u * dd.transpose() + dd * u));
      if (oracle::sup(Vector(lhs - rhs)) > 1e-12 * oracle::sup(dd)) ++kron_fail;
    }

    int trip_fail = 0;
    for (int t = 0; t < cases; ++t) {
      const Vector v = gen.vector(gen.integer(1, 64) + 1, -10.0, 10.0);
      if (oracle::sup(Vector(inverse_cheb_transform(cheb_transform(v)) - v)) > 1e-13 * oracle::sup(v)) ++trip_fail;
    }

    int poly_fail = 0;
    for (int t = 0; t < cases; ++t) {
      const int n = gen.integer(2, 40);
      const double L = gen.uniform(0.5, 2.0);
      const Grid1D g = cheb_points(n, L);
      const oracle::Polynomial p = gen.polynomial(gen.integer(0, n), L);
      const Matrix a = diff_matrix(g).entries;
      const Matrix b = second_diff_matrix(g).entries;
      const Vector x = g.points();
      const bool ok1 = oracle::sup(Vector(a * p.sample(x) - p.sample(x, 1))) <= 1e-10 * (1 + oracle::sup(a));
      const bool ok2 = oracle::sup(Vector(b * p.sample(x) - p.sample(x, 2))) <= 1e-10 * (1 + oracle::sup(b));
      if (!ok1 || !ok2) ++poly_fail;
    }

    o.note("cases_each", cases);
    o.note("jacobian_fail", jac_fail);
    o.note("kronecker_fail", kron_fail);
    o.note("roundtrip_fail", trip_fail);
    o.note("exactness_fail", poly_fail);
    o.check(jac_fail + kron_fail + trip_fail + poly_fail == 0, "all randomized cases pass");
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

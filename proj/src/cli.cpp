#include "bratu/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bratu/bratu1d.hpp"
#include "bratu/chebyshev.hpp"
#include "bratu/diagnostics.hpp"
#include "bratu/error.hpp"
#include "bratu/newton.hpp"
#include "bratu/pde2d.hpp"

namespace bratu::cli {

namespace {

using json = nlohmann::json;

constexpr const char* kProgram = "bratu";
constexpr const char* kVersion = "1.0.0";
constexpr int kMaxOrder = 64;

struct RunConfig {
  std::string command;
  std::vector<double> lambdas;
  double half_width = 1.0;
  std::optional<int> n;
  std::optional<std::string> guess;
  std::optional<double> amplitude;
  std::string nonlinearity = "exp";
  std::optional<double> epsilon;
  std::optional<int> samples;
  double tol = 1e-12;
  int max_iter = 25;
  std::string format = "json";
  std::string output;
  int jobs = 1;
  std::string problem = "1d";
};

// Whitespace/CSV table for the dat and csv formats. An empty row marks a
// block separator (blank line in dat output).
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct Outcome {
  json doc;
  Table table;
  int status = kOk;
  std::string message;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  std::ostringstream os;
  os.precision(16);
  os << std::scientific << v;
  return os.str();
}

std::string render_table(const Table& table, const std::string& format) {
  std::ostringstream os;
  const bool csv = format == "csv";
  if (csv) {
    for (std::size_t i = 0; i < table.header.size(); ++i) os << (i ? "," : "") << table.header[i];
  } else {
    os << "#";
    for (const auto& h : table.header) os << " " << h;
  }
  os << "\n";
  for (const auto& row : table.rows) {
    if (row.empty()) {
      if (!csv) os << "\n";
      continue;
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? (csv ? "," : " ") : "") << format_number(row[i]);
    }
    os << "\n";
  }
  return os.str();
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json to_json(const std::vector<double>& v) {
  json arr = json::array();
  for (double x : v) arr.push_back(number_or_null(x));
  return arr;
}

json to_json(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(number_or_null(v[i]));
  return arr;
}

json rows_to_json(const Matrix& m) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) arr.push_back(to_json(Vector(m.row(i).transpose())));
  return arr;
}

json optional_json(const std::optional<double>& v) {
  return v ? number_or_null(*v) : json(nullptr);
}

json trace_json(const NewtonTrace& trace) {
  json j;
  j["iterations"] = trace.iterations;
  j["update_norms"] = to_json(trace.update_norms);
  j["residual_norms"] = to_json(trace.residual_norms);
  j["initial_residual"] = number_or_null(trace.initial_residual);
  j["converged"] = trace.converged;
  try {
    j["order_estimate"] = number_or_null(convergence_order_estimate(trace));
  } catch (const InsufficientData&) {
    j["order_estimate"] = nullptr;
  }
  return j;
}

json metadata() { return {{"program", kProgram}, {"version", kVersion}}; }

json eigen_values_json(const ComplexVector& values) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    arr.push_back({{"re", values[i].real()}, {"im", values[i].imag()}});
  }
  return arr;
}

NewtonConfig newton_config(const RunConfig& cfg) {
  NewtonConfig c;
  c.tol_update = cfg.tol;
  c.max_iter = cfg.max_iter;
  return c;
}

bool is_two_d(const RunConfig& cfg) {
  return cfg.command == "solve-2d" || cfg.command == "symmetry" ||
         (cfg.command == "coeffs" && cfg.problem != "1d");
}

int default_order(const RunConfig& cfg) {
  if (cfg.command == "eig-2d" || is_two_d(cfg)) return 16;
  return 32;
}

std::string default_guess(const RunConfig& cfg) { return is_two_d(cfg) ? "eigenfunction" : "zero"; }

// Numbers from a guess file: either JSON written by a solve command
// (solution.grid_values) or plain whitespace/comma separated values.
std::vector<double> read_guess_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open guess file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();

  std::vector<double> values;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::exception& e) {
      throw UsageError("guess file '" + path + "' is not valid JSON: " + e.what());
    }
    const json* grid_values = nullptr;
    if (doc.contains("solution") && doc["solution"].is_object() &&
        doc["solution"].contains("grid_values")) {
      grid_values = &doc["solution"]["grid_values"];
    }
    if (grid_values == nullptr || !grid_values->is_array()) {
      throw UsageError("guess file '" + path + "' has no solution.grid_values");
    }
    for (const auto& row : *grid_values) {
      for (const auto& v : row) {
        if (!v.is_number()) throw UsageError("guess file contains a non-numeric grid value");
        values.push_back(v.get<double>());
      }
    }
    return values;
  }
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream is(text);
  std::string token;
  while (is >> token) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw UsageError("guess file '" + path + "' contains a non-numeric token '" + token + "'");
    }
  }
  return values;
}

void validate(RunConfig& cfg) {
  if (!(cfg.half_width > 0.0) || !std::isfinite(cfg.half_width)) {
    throw UsageError("--L must be positive");
  }
  const int n = cfg.n.value_or(default_order(cfg));
  const int min_order = (cfg.command == "eig-2d" || is_two_d(cfg)) ? 3 : 4;
  if (n < min_order || n > kMaxOrder) {
    throw UsageError("--n must lie in [" + std::to_string(min_order) + ", " +
                     std::to_string(kMaxOrder) + "]");
  }
  cfg.n = n;
  if (cfg.samples && *cfg.samples < 1) throw UsageError("--samples must be >= 1");
  if (!(cfg.tol > 0.0)) throw UsageError("--tol must be positive");
  if (cfg.max_iter < 1) throw UsageError("--max-iter must be >= 1");
  if (cfg.jobs < 1) throw UsageError("--jobs must be >= 1");

  const bool solves = cfg.command == "solve-1d" || cfg.command == "solve-2d" ||
                      cfg.command == "stability-1d" || cfg.command == "symmetry" ||
                      (cfg.command == "coeffs" && cfg.problem != "eigenfunction");
  if (solves) {
    if (cfg.lambdas.empty()) throw UsageError("--lambda is required for " + cfg.command);
    for (double l : cfg.lambdas) {
      if (!std::isfinite(l)) throw UsageError("--lambda values must be finite");
      if (is_two_d(cfg) && l < 0.0) throw UsageError("--lambda must be >= 0 for 2D problems");
    }
    std::sort(cfg.lambdas.begin(), cfg.lambdas.end());
  }

  const std::string guess = cfg.guess.value_or(default_guess(cfg));
  const bool file_guess = guess.rfind("file:", 0) == 0;
  if (!file_guess && guess != "zero" && guess != "eigenfunction" && guess != "onepoint") {
    throw UsageError("--guess must be zero, eigenfunction, onepoint or file:<path>");
  }
  if (file_guess && guess.size() == 5) throw UsageError("--guess file: needs a path");
  cfg.guess = guess;
  if (cfg.amplitude && !std::isfinite(*cfg.amplitude)) throw UsageError("--amplitude must be finite");
  if (cfg.amplitude && guess == "eigenfunction" && *cfg.amplitude <= 0.0) {
    throw UsageError("--amplitude must be positive for the eigenfunction guess");
  }

  if (cfg.nonlinearity == "gelfand") {
    if (!cfg.epsilon) throw UsageError("--nonlinearity gelfand needs --epsilon");
    if (!(*cfg.epsilon > 0.0 && *cfg.epsilon < 1.0)) {
      throw UsageError("--epsilon must lie in (0, 1)");
    }
  } else if (cfg.nonlinearity != "exp" && cfg.nonlinearity != "cosh" &&
             cfg.nonlinearity != "sinh") {
    throw UsageError("--nonlinearity must be exp, gelfand, cosh or sinh");
  }
  if (!is_two_d(cfg) && cfg.nonlinearity != "exp") {
    throw UsageError("1D commands only support the exp nonlinearity");
  }
  if (cfg.problem != "1d" && cfg.problem != "2d" && cfg.problem != "eigenfunction") {
    throw UsageError("--problem must be 1d, 2d or eigenfunction");
  }
}

json params_json(const RunConfig& cfg, std::optional<double> lambda) {
  json p;
  p["lambda"] = lambda ? json(*lambda) : json(nullptr);
  p["L"] = cfg.half_width;
  p["n"] = *cfg.n;
  p["guess"] = cfg.guess.value_or("");
  if (cfg.amplitude) p["amplitude"] = *cfg.amplitude;
  p["nonlinearity"] = cfg.nonlinearity;
  p["epsilon"] = cfg.epsilon ? json(*cfg.epsilon) : json(nullptr);
  return p;
}

json failure_json(const NewtonError& e) {
  return {{"kind", to_string(e.kind())}, {"message", e.what()}};
}

int failure_status(const NewtonError& e) {
  return e.kind() == NewtonError::Kind::SingularJacobian ? kNumericalFailure : kNonConvergence;
}

// ---------------------------------------------------------------- 1D ----

oned::Guess1D make_guess_1d(const RunConfig& cfg, const Grid1D& grid) {
  const std::string& guess = *cfg.guess;
  if (guess == "zero") return oned::ZeroGuess{};
  if (guess == "onepoint") return oned::OnePointGuess{cfg.amplitude.value_or(6.0)};
  if (guess == "eigenfunction") {
    const double amp = cfg.amplitude.value_or(0.1);
    const Vector x = grid.points() / grid.half_width();
    return oned::CustomGuess{
        (amp * (0.5 * std::numbers::pi * x.array()).cos()).matrix()};
  }
  const std::vector<double> raw = read_guess_file(guess.substr(5));
  return oned::CustomGuess{Eigen::Map<const Vector>(raw.data(), static_cast<Eigen::Index>(raw.size()))};
}

struct Solved1D {
  std::optional<oned::Solution1D> solution;
  Outcome outcome;
};

Solved1D solve_1d_outcome(const RunConfig& cfg, double lambda, bool with_stability) {
  Solved1D result;
  Outcome& out = result.outcome;
  const Grid1D grid = cheb_points(*cfg.n, cfg.half_width);
  out.doc["params"] = params_json(cfg, lambda);
  out.doc["metadata"] = metadata();
  out.table.header = {"x", "u"};
  try {
    const oned::Solution1D sol = solve_1d(lambda, grid, make_guess_1d(cfg, grid), newton_config(cfg));
    const diag::DecayReport decay = diag::decay_report_1d(sol);
    json s;
    s["u_max"] = sol.values.maxCoeff();
    s["center_value"] = sol.center_value();
    s["branch"] = oned::to_string(sol.branch);
    s["points"] = to_json(grid.points());
    s["grid_values"] = json::array({to_json(sol.values)});
    out.doc["solution"] = s;
    out.doc["newton"] = trace_json(sol.trace);
    out.doc["diagnostics"] = {{"odd_floor", decay.odd_floor},
                              {"even_floor", decay.even_floor},
                              {"fit_rate", optional_json(decay.fit_rate)},
                              {"rot90_dev", nullptr},
                              {"reflection_dev", diag::reflection_deviation(sol.values)}};
    if (lambda > 0.0) {
      try {
        const auto [a_small, a_big] = oned::branch_amplitudes(lambda, cfg.half_width);
        out.doc["solution"]["branch_amplitudes"] = {{"small", a_small}, {"big", a_big}};
      } catch (const NoSolution&) {
      }
    }
    for (Eigen::Index j = 0; j < grid.size(); ++j) out.table.rows.push_back({grid[j], sol.values[j]});

    if (with_stability) {
      const oned::Stability1D st = oned::stability_1d(sol);
      const Eigen::Index k = std::min<Eigen::Index>(cfg.samples.value_or(10), st.spectrum.values.size());
      out.doc["stability"] = {{"stable", st.stable},
                              {"mu_min", st.mu_min},
                              {"spectrum", eigen_values_json(st.spectrum.values.head(k))}};
      out.table.header = {"index", "mu_re", "mu_im"};
      out.table.rows.clear();
      for (Eigen::Index i = 0; i < k; ++i) {
        out.table.rows.push_back({static_cast<double>(i), st.spectrum.values[i].real(),
                                  st.spectrum.values[i].imag()});
      }
    }
    result.solution = sol;
  } catch (const NewtonError& e) {
    out.doc["solution"] = nullptr;
    out.doc["newton"] = trace_json(e.trace());
    out.doc["diagnostics"] = nullptr;
    out.doc["error"] = failure_json(e);
    out.status = failure_status(e);
    out.message = e.what();
    out.table.header = {"iteration", "update_norm", "residual_norm"};
    for (std::size_t i = 0; i < e.trace().update_norms.size(); ++i) {
      out.table.rows.push_back({static_cast<double>(i + 1), e.trace().update_norms[i],
                                e.trace().residual_norms[i]});
    }
  }
  return result;
}

// ---------------------------------------------------------------- 2D ----

twod::Field2D make_guess_2d(const RunConfig& cfg, const Grid1D& grid) {
  const std::string& guess = *cfg.guess;
  const Eigen::Index m = grid.interior_size();
  if (guess == "zero") return twod::Field2D{grid, Matrix::Zero(m, m), 0.0, std::nullopt};
  if (guess == "onepoint") return twod::guess_onepoint(grid, cfg.amplitude.value_or(6.0));
  if (guess == "eigenfunction") return twod::guess_eigenfunction(grid, cfg.amplitude.value_or(0.1));

  const std::vector<double> raw = read_guess_file(guess.substr(5));
  const auto count = static_cast<Eigen::Index>(raw.size());
  const Eigen::Index full = grid.size();
  // Row-major, row index = x index.
  if (count == full * full) {
    Matrix values(full, full);
    for (Eigen::Index i = 0; i < full; ++i)
      for (Eigen::Index j = 0; j < full; ++j) values(i, j) = raw[static_cast<std::size_t>(i * full + j)];
    return twod::Field2D{grid, values.block(1, 1, m, m), 0.0, std::nullopt};
  }
  if (count == m * m) {
    Matrix values(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) values(i, j) = raw[static_cast<std::size_t>(i * m + j)];
    return twod::Field2D{grid, values, 0.0, std::nullopt};
  }
  throw UsageError("guess file must hold (n+1)^2 or (n-1)^2 values, found " + std::to_string(count));
}

// Label by the peak of the one-point curve, A = 1/0.64; approximate.
const char* branch_2d(double u_max) { return u_max <= 1.0 / 0.64 ? "small" : "big"; }

struct Solved2D {
  std::optional<twod::Field2D> field;
  Outcome outcome;
};

Solved2D solve_2d_outcome(const RunConfig& cfg, double lambda) {
  Solved2D result;
  Outcome& out = result.outcome;
  const Grid1D grid = cheb_points(*cfg.n, cfg.half_width);
  out.doc["params"] = params_json(cfg, lambda);
  out.doc["metadata"] = metadata();
  out.table.header = {"x", "y", "u"};
  try {
    const twod::Nonlinearity nl = twod::make_nonlinearity(cfg.nonlinearity, cfg.epsilon.value_or(0.0));
    twod::Field2D field = twod::solve_2d(lambda, nl, grid, make_guess_2d(cfg, grid), newton_config(cfg));
    const Matrix full = field.embedded();
    const diag::DecayReport decay = diag::decay_report_2d(full);
    const diag::SymmetryReport sym = diag::symmetry_report(field);
    const Vector origin = Vector::Zero(1);
    json s;
    s["u_max"] = field.u_max();
    s["center_value"] = barycentric_resample_2d(grid, full, origin, origin)(0, 0);
    s["branch"] = branch_2d(field.u_max());
    s["points"] = to_json(grid.points());
    s["grid_values"] = rows_to_json(full);
    out.doc["solution"] = s;
    out.doc["newton"] = trace_json(*field.trace);
    out.doc["diagnostics"] = {{"odd_floor", decay.odd_floor},
                              {"even_floor", decay.even_floor},
                              {"fit_rate", optional_json(decay.fit_rate)},
                              {"rot90_dev", sym.rot90_dev},
                              {"transpose_dev", sym.transpose_dev},
                              {"reflect_x_dev", sym.reflect_x_dev},
                              {"reflect_y_dev", sym.reflect_y_dev}};
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      if (i > 0) out.table.rows.emplace_back();
      for (Eigen::Index j = 0; j < grid.size(); ++j) out.table.rows.push_back({grid[i], grid[j], full(i, j)});
    }
    result.field = std::move(field);
  } catch (const NewtonError& e) {
    out.doc["solution"] = nullptr;
    out.doc["newton"] = trace_json(e.trace());
    out.doc["diagnostics"] = nullptr;
    out.doc["error"] = failure_json(e);
    out.status = failure_status(e);
    out.message = e.what();
    out.table.header = {"iteration", "update_norm", "residual_norm"};
    for (std::size_t i = 0; i < e.trace().update_norms.size(); ++i) {
      out.table.rows.push_back({static_cast<double>(i + 1), e.trace().update_norms[i],
                                e.trace().residual_norms[i]});
    }
  }
  return result;
}

// ------------------------------------------------------------ sweeps ----

template <typename Fn>
std::vector<Outcome> sweep(const RunConfig& cfg, Fn&& solve_one) {
  std::vector<Outcome> outcomes(cfg.lambdas.size());
  const std::size_t jobs = static_cast<std::size_t>(cfg.jobs);
  for (std::size_t start = 0; start < cfg.lambdas.size(); start += jobs) {
    const std::size_t stop = std::min(cfg.lambdas.size(), start + jobs);
    if (stop - start == 1) {
      outcomes[start] = solve_one(cfg.lambdas[start]);
      continue;
    }
    std::vector<std::future<Outcome>> pending;
    for (std::size_t i = start; i < stop; ++i) {
      pending.push_back(std::async(std::launch::async, solve_one, cfg.lambdas[i]));
    }
    for (std::size_t i = start; i < stop; ++i) outcomes[i] = pending[i - start].get();
  }
  return outcomes;
}

Outcome combine(std::vector<Outcome> outcomes) {
  if (outcomes.size() == 1) return std::move(outcomes.front());
  Outcome all;
  all.doc["runs"] = json::array();
  all.doc["metadata"] = metadata();
  for (auto& o : outcomes) {
    o.doc.erase("metadata");
    all.doc["runs"].push_back(o.doc);
    if (all.table.header.empty()) all.table.header = o.table.header;
    if (!all.table.rows.empty()) all.table.rows.emplace_back();
    all.table.rows.insert(all.table.rows.end(), o.table.rows.begin(), o.table.rows.end());
    all.status = std::max(all.status, o.status);
    if (all.message.empty()) all.message = o.message;
  }
  return all;
}

// ---------------------------------------------------------- commands ----

Outcome cmd_bifurcation_1d(const RunConfig& cfg) {
  const int samples = cfg.samples.value_or(400);
  const double a_max = cfg.amplitude.value_or(8.0);
  if (!(a_max > 0.0)) throw UsageError("--amplitude (largest A) must be positive");
  const oned::BifurcationCurve curve = oned::bifurcation_curve(cfg.half_width, samples, a_max);
  Outcome out;
  out.doc["params"] = {{"L", cfg.half_width}, {"samples", samples}, {"a_max", a_max}};
  out.doc["fold"] = {{"A", curve.fold.amplitude}, {"lambda", curve.fold.lambda}};
  json s = json::array();
  out.table.header = {"A", "lambda"};
  for (const auto& [a, l] : curve.samples) {
    s.push_back({a, l});
    out.table.rows.push_back({a, l});
  }
  out.doc["samples"] = s;
  out.doc["metadata"] = metadata();
  return out;
}

Outcome cmd_bifurcation_2d_approx(const RunConfig& cfg) {
  const int samples = cfg.samples.value_or(400);
  const double a_max = cfg.amplitude.value_or(8.0);
  if (!(a_max > 0.0)) throw UsageError("--amplitude (largest A) must be positive");
  Outcome out;
  const double a_peak = 1.0 / 0.64;
  out.doc["params"] = {{"samples", samples}, {"a_max", a_max}};
  out.doc["fold"] = {{"A", a_peak}, {"lambda", twod::onepoint_lambda(a_peak)}};
  json s = json::array();
  out.table.header = {"A", "lambda"};
  for (int j = 0; j <= samples; ++j) {
    const double a = a_max * j / samples;
    const double l = twod::onepoint_lambda(a);
    s.push_back({a, l});
    out.table.rows.push_back({a, l});
  }
  out.doc["samples"] = s;
  out.doc["metadata"] = metadata();
  return out;
}

Outcome cmd_eig_2d(const RunConfig& cfg) {
  const Grid1D grid = cheb_points(*cfg.n, cfg.half_width);
  const twod::Operator2D op = twod::assemble_laplacian(grid);
  const Eigen::Index total = op.matrix.rows();
  const Eigen::Index k = std::min<Eigen::Index>(cfg.samples.value_or(10), total);
  const EigenResult eigs = twod::laplacian_eigs(op, k, false);
  Outcome out;
  out.doc["params"] = {{"L", cfg.half_width}, {"n", *cfg.n}, {"count", k}};
  out.doc["eigenvalues"] = eigen_values_json(eigs.values);
  out.doc["metadata"] = metadata();
  out.table.header = {"index", "re", "im"};
  for (Eigen::Index i = 0; i < k; ++i) {
    out.table.rows.push_back({static_cast<double>(i), eigs.values[i].real(), eigs.values[i].imag()});
  }
  return out;
}

json decay_json(const diag::DecayReport& d) {
  json j;
  j["even_floor"] = d.even_floor;
  j["odd_floor"] = d.odd_floor;
  j["fit_rate"] = optional_json(d.fit_rate);
  j["plateau"] = d.plateau;
  j["plateau_index"] = d.plateau_index;
  j["magnitudes"] = d.magnitudes.cols() == 1 ? to_json(Vector(d.magnitudes.col(0)))
                                             : rows_to_json(d.magnitudes);
  return j;
}

Table decay_table(const diag::DecayReport& d) {
  Table t;
  if (d.magnitudes.cols() == 1) {
    t.header = {"k", "abs_a_k"};
    for (Eigen::Index k = 0; k < d.magnitudes.rows(); ++k) {
      t.rows.push_back({static_cast<double>(k), d.magnitudes(k, 0)});
    }
  } else {
    t.header = {"k", "l", "abs_a_kl"};
    for (Eigen::Index k = 0; k < d.magnitudes.rows(); ++k) {
      if (k > 0) t.rows.emplace_back();
      for (Eigen::Index l = 0; l < d.magnitudes.cols(); ++l) {
        t.rows.push_back({static_cast<double>(k), static_cast<double>(l), d.magnitudes(k, l)});
      }
    }
  }
  return t;
}

Outcome cmd_coeffs(const RunConfig& cfg) {
  if (cfg.problem == "eigenfunction") {
    const Grid1D grid = cheb_points(*cfg.n, cfg.half_width);
    const twod::Field2D field = twod::guess_eigenfunction(grid, cfg.amplitude.value_or(1.0));
    const diag::DecayReport d = diag::decay_report_2d(field);
    Outcome out;
    out.doc["params"] = {{"problem", "eigenfunction"}, {"L", cfg.half_width}, {"n", *cfg.n}};
    out.doc["decay"] = decay_json(d);
    out.doc["metadata"] = metadata();
    out.table = decay_table(d);
    return out;
  }

  auto one = [&cfg](double lambda) -> Outcome {
    Outcome o;
    if (cfg.problem == "1d") {
      Solved1D s = solve_1d_outcome(cfg, lambda, false);
      o = std::move(s.outcome);
      if (s.solution) {
        const diag::DecayReport d = diag::decay_report_1d(*s.solution);
        o.doc["decay"] = decay_json(d);
        o.table = decay_table(d);
      }
    } else {
      Solved2D s = solve_2d_outcome(cfg, lambda);
      o = std::move(s.outcome);
      if (s.field) {
        const diag::DecayReport d = diag::decay_report_2d(*s.field);
        o.doc["decay"] = decay_json(d);
        o.table = decay_table(d);
      }
    }
    o.doc["params"]["problem"] = cfg.problem;
    o.doc.erase("solution");
    return o;
  };
  return combine(sweep(cfg, one));
}

Outcome cmd_symmetry(const RunConfig& cfg) {
  auto one = [&cfg](double lambda) -> Outcome {
    Solved2D s = solve_2d_outcome(cfg, lambda);
    Outcome o = std::move(s.outcome);
    if (s.field) {
      const diag::SymmetryReport r = diag::symmetry_report(*s.field);
      o.doc["symmetry"] = {{"rot90_dev", r.rot90_dev},
                           {"transpose_dev", r.transpose_dev},
                           {"reflect_x_dev", r.reflect_x_dev},
                           {"reflect_y_dev", r.reflect_y_dev}};
      o.doc["u_max"] = s.field->u_max();
      o.table.header = {"rot90_dev", "transpose_dev", "reflect_x_dev", "reflect_y_dev"};
      o.table.rows = {{r.rot90_dev, r.transpose_dev, r.reflect_x_dev, r.reflect_y_dev}};
    }
    o.doc.erase("solution");
    return o;
  };
  return combine(sweep(cfg, one));
}

Outcome dispatch(const RunConfig& cfg) {
  if (cfg.command == "bifurcation-1d") return cmd_bifurcation_1d(cfg);
  if (cfg.command == "bifurcation-2d-approx") return cmd_bifurcation_2d_approx(cfg);
  if (cfg.command == "eig-2d") return cmd_eig_2d(cfg);
  if (cfg.command == "solve-1d") {
    return combine(sweep(cfg, [&cfg](double l) { return solve_1d_outcome(cfg, l, false).outcome; }));
  }
  if (cfg.command == "stability-1d") {
    return combine(sweep(cfg, [&cfg](double l) { return solve_1d_outcome(cfg, l, true).outcome; }));
  }
  if (cfg.command == "solve-2d") {
    return combine(sweep(cfg, [&cfg](double l) { return solve_2d_outcome(cfg, l).outcome; }));
  }
  if (cfg.command == "coeffs") return cmd_coeffs(cfg);
  if (cfg.command == "symmetry") return cmd_symmetry(cfg);
  throw UsageError("unknown command '" + cfg.command + "'");
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--L", cfg.half_width, "Half-width L of the domain [-L, L]");
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "dat"}));
  sub->add_option("--output", cfg.output, "Write the primary output to this path");
}

void add_solver(CLI::App* sub, RunConfig& cfg, bool two_d) {
  sub->add_option("--lambda", cfg.lambdas, "Parameter value(s); comma-separated for a sweep")
      ->delimiter(',');
  sub->add_option("--n", cfg.n, two_d ? "Polynomial order (default 16)" : "Polynomial order (default 32)");
  sub->add_option("--guess", cfg.guess, "zero | eigenfunction | onepoint | file:<path>");
  sub->add_option("--amplitude", cfg.amplitude, "Amplitude of the initial guess");
  sub->add_option("--tol", cfg.tol, "Newton update tolerance (sup norm)");
  sub->add_option("--max-iter", cfg.max_iter, "Newton iteration cap");
  sub->add_option("--jobs", cfg.jobs, "Parallel workers for lambda sweeps");
  sub->add_option("--nonlinearity", cfg.nonlinearity, "exp | gelfand | cosh | sinh");
  sub->add_option("--epsilon", cfg.epsilon, "Gelfand perturbation parameter");
  sub->add_option("--samples", cfg.samples, "Number of eigenvalues to report");
}

void write_output(const RunConfig& cfg, const Outcome& outcome, std::ostream& out) {
  std::string text = cfg.format == "json" ? outcome.doc.dump(2) + "\n"
                                          : render_table(outcome.table, cfg.format);
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + cfg.output + "'");
  file << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Chebyshev collocation tools for the Bratu problem in 1D and 2D", kProgram};
  app.require_subcommand(1);

  auto* bif1 = app.add_subcommand("bifurcation-1d", "Exact 1D bifurcation curve lambda(A) and its fold");
  add_common(bif1, cfg);
  bif1->add_option("--samples", cfg.samples, "Number of curve samples (default 400)");
  bif1->add_option("--amplitude", cfg.amplitude, "Largest centre value A sampled (default 8)");

  auto* solve1 = app.add_subcommand("solve-1d", "Collocation solve of u'' + lambda e^u = 0");
  add_common(solve1, cfg);
  add_solver(solve1, cfg, false);

  auto* stab1 = app.add_subcommand("stability-1d", "Linear stability of a 1D solution");
  add_common(stab1, cfg);
  add_solver(stab1, cfg, false);

  auto* eig2 = app.add_subcommand("eig-2d", "Eigenvalues of the discrete Dirichlet Laplacian");
  add_common(eig2, cfg);
  eig2->add_option("--n", cfg.n, "Polynomial order (default 16)");
  eig2->add_option("--samples", cfg.samples, "Number of eigenvalues (default 10)");

  auto* solve2 = app.add_subcommand("solve-2d", "Collocation solve of Delta u + lambda f(u) = 0");
  add_common(solve2, cfg);
  add_solver(solve2, cfg, true);

  auto* bif2 = app.add_subcommand("bifurcation-2d-approx", "One-point approximation lambda ~ 3.2 A e^{-0.64 A}");
  bif2->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "dat"}));
  bif2->add_option("--output", cfg.output, "Write the primary output to this path");
  bif2->add_option("--samples", cfg.samples, "Number of curve intervals (default 400)");
  bif2->add_option("--amplitude", cfg.amplitude, "Largest A sampled (default 8)");

  auto* coeffs = app.add_subcommand("coeffs", "Chebyshev coefficient decay of a solution");
  add_common(coeffs, cfg);
  add_solver(coeffs, cfg, false);
  coeffs->add_option("--problem", cfg.problem, "1d | 2d | eigenfunction")
      ->check(CLI::IsMember({"1d", "2d", "eigenfunction"}));

  auto* sym = app.add_subcommand("symmetry", "Symmetry deviations of a 2D solution");
  add_common(sym, cfg);
  add_solver(sym, cfg, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << kProgram << ": " << e.what() << "\n";
    return kInvalidArguments;
  }
  for (const auto* sub : app.get_subcommands()) cfg.command = sub->get_name();

  try {
    validate(cfg);
    const Outcome outcome = dispatch(cfg);
    write_output(cfg, outcome, out);
    if (outcome.status != kOk) err << kProgram << ": " << outcome.message << "\n";
    return outcome.status;
  } catch (const UsageError& e) {
    err << kProgram << ": " << e.what() << "\n";
    return kInvalidArguments;
  } catch (const InvalidArgument& e) {
    err << kProgram << ": " << e.what() << "\n";
    return kInvalidArguments;
  } catch (const std::exception& e) {
    err << kProgram << ": numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
}

}  // namespace bratu::cli

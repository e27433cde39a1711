#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ergo/catalog.hpp"
#include "ergo/model.hpp"

namespace ergo {

/// Run configuration, parsed from a strict sectioned key = value text file
/// ([problem] / [solver] / [sim] / [sweep]; '#' comments). Unknown sections
/// or keys are input errors; a problem names exactly one of an expression
/// triple (drift/sigma/cost) or a catalog id with parameters.
struct ProblemSection {
  std::optional<std::string> drift, sigma, cost;  // expression strings
  std::optional<std::string> catalog;
  std::map<std::string, double> catalog_params;
  std::optional<double> q_u, q_d;  // expression problems only (catalog has its own)
  double anchor = 0.0;
  double bracket_lo = -50.0;  // argmin search bracket for pi1/pi2
  double bracket_hi = 50.0;
};

struct SolverSection {
  double quad_tol = 1e-10;
  double root_tol = 1e-9;
  double foc_tol = 0.0;      // 0 = auto (1e-6 * (q_u + q_d))
  std::string mode = "two";  // two | down | up | fix_a | fix_b
  std::optional<double> fixed_a, fixed_b;
  int grid_n = 513;          // value-table core points
};

struct SimSection {
  bool present = false;
  double dt = 1e-3;
  double horizon = 2000.0;
  double burn_in = -1.0;
  int replicates = 16;
  std::uint64_t seed = 20240601;
  double x0 = 0.0;
  int bins = 32;
  std::optional<double> a, b;  // explicit boundaries
};

struct SweepSection {
  bool present = false;
  std::string parameter;
  std::vector<double> values;
};

struct RunConfig {
  ProblemSection problem;
  SolverSection solver;
  SimSection sim;
  SweepSection sweep;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical rendering; parse_config(dump_config(c)) == c field for field.
std::string dump_config(const RunConfig& c);

/// Materialises the Problem (catalog or parsed expressions, with kink
/// discovery over the argmin bracket) plus the argmin intervals.
struct BuiltProblem {
  Problem problem;
  Interval bracket1, bracket2;
};
BuiltProblem build_problem(const RunConfig& c);

/// Locale-independent numeric rendering: 12 significant digits for reports
/// and CSV, 17 for full-precision output.
std::string format_sig(double v, int digits = 12);

}  // namespace ergo

// ergoctl: solve, sweep, simulate and evaluate long-run average-cost
// reflection problems for one-dimensional diffusions defined in a config
// file (expression-based or from the built-in model catalog).
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ergo/catalog.hpp"
#include "ergo/closedform.hpp"
#include "ergo/config.hpp"
#include "ergo/errors.hpp"
#include "ergo/model.hpp"
#include "ergo/parallel.hpp"
#include "ergo/sim.hpp"
#include "ergo/solver.hpp"
#include "ergo/value.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitExistence = 2;
constexpr int kExitVerification = 3;

using nlohmann::json;

struct SolveOptions {
  std::string config_path;
  std::string one_sided;  // "", "down", "up"
  std::optional<double> fix_a, fix_b;
  std::string out_csv;
  bool as_json = false;
  bool dump = false;
};

std::string resolve_mode(const ergo::RunConfig& cfg, const SolveOptions& opt) {
  if (!opt.one_sided.empty()) return opt.one_sided;
  if (opt.fix_a) return "fix_a";
  if (opt.fix_b) return "fix_b";
  return cfg.solver.mode;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cout << "warning: " << w << "\n";
}

void write_value_table_csv(const std::string& path, const ergo::ValueTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ergo::InputError("cannot open output file '" + path + "'");
  out << "x,v,v_prime,p_weight\n";
  for (std::size_t i = 0; i < table.grid.size(); ++i) {
    out << ergo::format_sig(table.grid[i]) << ',' << ergo::format_sig(table.v[i])
        << ',' << ergo::format_sig(table.v_prime[i]) << ','
        << ergo::format_sig(table.p_weight[i]) << '\n';
  }
}

int run_solve(const SolveOptions& opt) {
  const ergo::RunConfig cfg = ergo::load_config(opt.config_path);
  if (opt.dump) {
    std::cout << ergo::dump_config(cfg);
    return kExitOk;
  }
  const std::string mode = resolve_mode(cfg, opt);
  if (!opt.out_csv.empty() && mode != "two")
    throw ergo::InputError(
        "--out value tables are defined for two-boundary solves only");

  // The exponential-cost model carries its own documented existence
  // condition; report it up front instead of expanding brackets forever.
  if (cfg.problem.catalog && *cfg.problem.catalog == "exp_cost_driftless" &&
      mode == "two") {
    const double sigma = cfg.problem.catalog_params.count("sigma")
                             ? cfg.problem.catalog_params.at("sigma")
                             : 0.0;
    if (!ergo::closedform::exp_cost_boundary(sigma)) {
      std::cout << "existence not established (sigma >= sqrt(2) regime): the "
                   "exponential-cost boundary equation has no root\n";
      return kExitExistence;
    }
  }

  auto built = ergo::build_problem(cfg);
  const ergo::Problem& p = built.problem;
  const ergo::PiPair pi = ergo::pi_pair(p, built.bracket1, built.bracket2);

  json j;
  j["mode"] = mode;
  if (mode == "two") {
    const auto sol = ergo::solve_two_boundary(p, pi);
    print_warnings(sol.warnings);
    std::cout << "a_star          = " << ergo::format_sig(sol.a_star) << "\n"
              << "b_star          = " << ergo::format_sig(sol.b_star) << "\n"
              << "lambda_star     = " << ergo::format_sig(sol.lambda_star) << "\n"
              << "residual_I1     = " << ergo::format_sig(sol.residual_I1) << "\n"
              << "residual_I2     = " << ergo::format_sig(sol.residual_I2) << "\n"
              << "residual_match  = " << ergo::format_sig(sol.residual_match) << "\n"
              << "xhat1           = " << ergo::format_sig(pi.xhat1) << "\n"
              << "xhat2           = " << ergo::format_sig(pi.xhat2) << "\n"
              << "iterations      = " << sol.iterations << "\n";
    const auto rates = ergo::control_rates(p, sol.a_star, sol.b_star);
    std::cout << "alpha           = " << ergo::format_sig(rates.first) << "\n"
              << "beta            = " << ergo::format_sig(rates.second) << "\n";
    j["a_star"] = sol.a_star;
    j["b_star"] = sol.b_star;
    j["lambda_star"] = sol.lambda_star;
    j["residual_I1"] = sol.residual_I1;
    j["residual_I2"] = sol.residual_I2;
    j["residual_match"] = sol.residual_match;
    j["alpha"] = rates.first;
    j["beta"] = rates.second;
    j["warnings"] = sol.warnings;
    if (!opt.out_csv.empty()) {
      const auto table = ergo::build_value_table(p, sol, cfg.solver.grid_n);
      write_value_table_csv(opt.out_csv, table);
      std::cout << "value table     -> " << opt.out_csv << "\n";
    }
  } else {
    ergo::OneSidedSolution sol;
    if (mode == "down") sol = ergo::solve_one_sided_down(p, pi);
    else if (mode == "up") sol = ergo::solve_one_sided_up(p, pi);
    else if (mode == "fix_a") sol = ergo::solve_b_given_a(p, pi, opt.fix_a ? *opt.fix_a : *cfg.solver.fixed_a);
    else sol = ergo::solve_a_given_b(p, pi, opt.fix_b ? *opt.fix_b : *cfg.solver.fixed_b);
    print_warnings(sol.warnings);
    std::cout << "boundary        = " << ergo::format_sig(sol.boundary) << "\n"
              << "lambda          = " << ergo::format_sig(sol.lambda) << "\n"
              << "residual        = " << ergo::format_sig(sol.residual) << "\n"
              << "side            = "
              << (sol.side == ergo::ControlSide::down_control ? "down_control"
                                                              : "up_control")
              << "\n"
              << "iterations      = " << sol.iterations << "\n";
    j["boundary"] = sol.boundary;
    j["lambda"] = sol.lambda;
    j["residual"] = sol.residual;
    j["side"] = sol.side == ergo::ControlSide::down_control ? "down_control"
                                                            : "up_control";
    j["warnings"] = sol.warnings;
  }
  if (opt.as_json) std::cout << j.dump(2) << "\n";
  return kExitOk;
}

struct SweepRow {
  double value = 0.0;
  std::string a_star, b_star, lambda, r1, r2;
  std::string status = "ok";
};

int run_sweep(const std::string& config_path, const std::string& out_path) {
  const ergo::RunConfig cfg = ergo::load_config(config_path);
  if (!cfg.sweep.present)
    throw ergo::InputError("config has no [sweep] section");
  const std::string mode = cfg.solver.mode;

  // An unknown parameter name is an input error, not a per-row failure.
  {
    bool known = false;
    for (const auto& entry : ergo::catalog_entries()) {
      if (entry.id != *cfg.problem.catalog) continue;
      for (const auto& param : entry.params) {
        known = known || param.name == cfg.sweep.parameter;
      }
    }
    if (!known)
      throw ergo::InputError("sweep parameter '" + cfg.sweep.parameter +
                             "' is not a parameter of catalog '" +
                             *cfg.problem.catalog + "'");
  }

  std::vector<SweepRow> rows(cfg.sweep.values.size());
  ergo::parallel_for(cfg.sweep.values.size(), [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.value = cfg.sweep.values[i];
    ergo::RunConfig local = cfg;
    local.problem.catalog_params[cfg.sweep.parameter] = row.value;
    try {
      auto built = ergo::build_problem(local);
      const ergo::PiPair pi =
          ergo::pi_pair(built.problem, built.bracket1, built.bracket2);
      if (mode == "two") {
        const auto sol = ergo::solve_two_boundary(built.problem, pi);
        row.a_star = ergo::format_sig(sol.a_star);
        row.b_star = ergo::format_sig(sol.b_star);
        row.lambda = ergo::format_sig(sol.lambda_star);
        row.r1 = ergo::format_sig(sol.residual_I1);
        row.r2 = ergo::format_sig(sol.residual_I2);
      } else {
        ergo::OneSidedSolution sol;
        if (mode == "down") sol = ergo::solve_one_sided_down(built.problem, pi);
        else if (mode == "up") sol = ergo::solve_one_sided_up(built.problem, pi);
        else if (mode == "fix_a")
          sol = ergo::solve_b_given_a(built.problem, pi, *local.solver.fixed_a);
        else
          sol = ergo::solve_a_given_b(built.problem, pi, *local.solver.fixed_b);
        if (sol.side == ergo::ControlSide::down_control)
          row.b_star = ergo::format_sig(sol.boundary);
        else
          row.a_star = ergo::format_sig(sol.boundary);
        row.lambda = ergo::format_sig(sol.lambda);
        row.r1 = ergo::format_sig(sol.residual);
      }
    } catch (const ergo::ExistenceError&) {
      row.status = "existence_not_established";
    } catch (const ergo::TailError&) {
      row.status = "tail_condition_violated";
    } catch (const std::exception&) {
      row.status = "error";
    }
  });

  std::ostringstream csv;
  csv << "parameter,value,a_star,b_star,lambda_star,residual_I1,residual_I2,status\n";
  for (const auto& row : rows) {
    csv << cfg.sweep.parameter << ',' << ergo::format_sig(row.value) << ','
        << row.a_star << ',' << row.b_star << ',' << row.lambda << ','
        << row.r1 << ',' << row.r2 << ',' << row.status << '\n';
  }
  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ergo::InputError("cannot open output file '" + out_path + "'");
    out << csv.str();
    std::cout << "sweep csv -> " << out_path << " (" << rows.size() << " rows)\n";
  }
  return kExitOk;
}

void write_sim_csv(const std::string& path, const ergo::SimEstimate& est) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ergo::InputError("cannot open output file '" + path + "'");
  out << "kind,index,x_lo,x_hi,value\n";
  for (std::size_t i = 0; i < est.lambda_by_replicate.size(); ++i) {
    out << "replicate_lambda," << i << ",,,"
        << ergo::format_sig(est.lambda_by_replicate[i]) << '\n';
  }
  for (std::size_t i = 0; i + 1 < est.bin_edges.size(); ++i) {
    out << "bin_mass," << i << ',' << ergo::format_sig(est.bin_edges[i]) << ','
        << ergo::format_sig(est.bin_edges[i + 1]) << ','
        << ergo::format_sig(est.bin_mass[i]) << '\n';
  }
}

int run_simulate(const std::string& config_path, bool at_optimum,
                 std::vector<double> boundaries, bool as_json,
                 const std::string& out_csv) {
  const ergo::RunConfig cfg = ergo::load_config(config_path);
  if (!cfg.sim.present) throw ergo::InputError("config has no [sim] section");
  auto built = ergo::build_problem(cfg);
  const ergo::Problem& p = built.problem;
  const ergo::PiPair pi = ergo::pi_pair(p, built.bracket1, built.bracket2);
  const std::string mode = cfg.solver.mode;

  ergo::SimConfig sc;
  sc.dt = cfg.sim.dt;
  sc.horizon = cfg.sim.horizon;
  sc.burn_in = cfg.sim.burn_in;
  sc.replicates = cfg.sim.replicates;
  sc.base_seed = cfg.sim.seed;
  sc.x0 = cfg.sim.x0;
  sc.bins = cfg.sim.bins;

  ergo::SimEstimate est;
  double analytic = 0.0;
  if (mode == "down" || mode == "up") {
    const ergo::ControlSide side = mode == "down"
                                       ? ergo::ControlSide::down_control
                                       : ergo::ControlSide::up_control;
    double boundary;
    if (at_optimum) {
      boundary = (mode == "down" ? ergo::solve_one_sided_down(p, pi)
                                 : ergo::solve_one_sided_up(p, pi))
                     .boundary;
    } else if (boundaries.size() == 1) {
      boundary = boundaries[0];
    } else if (mode == "down" && cfg.sim.b) {
      boundary = *cfg.sim.b;
    } else if (mode == "up" && cfg.sim.a) {
      boundary = *cfg.sim.a;
    } else {
      throw ergo::InputError(
          "simulate: give --at-optimum, --boundaries <x>, or [sim] a/b");
    }
    if (sc.x0 == 0.0 &&
        ((side == ergo::ControlSide::down_control && boundary < 0.0) ||
         (side == ergo::ControlSide::up_control && boundary > 0.0))) {
      sc.x0 = boundary;  // default start must lie on the kept side
    }
    est = ergo::simulate_one_sided(p, boundary, side, sc);
    analytic = ergo::one_sided_cost(p, boundary, side);
    std::cout << "boundary        = " << ergo::format_sig(boundary) << "\n";
  } else {
    double a, b;
    if (at_optimum) {
      const auto sol = ergo::solve_two_boundary(p, pi);
      a = sol.a_star;
      b = sol.b_star;
    } else if (boundaries.size() == 2) {
      a = boundaries[0];
      b = boundaries[1];
    } else if (cfg.sim.a && cfg.sim.b) {
      a = *cfg.sim.a;
      b = *cfg.sim.b;
    } else {
      throw ergo::InputError(
          "simulate: give --at-optimum, --boundaries <a> <b>, or [sim] a/b");
    }
    if (sc.x0 < a || sc.x0 > b) sc.x0 = 0.5 * (a + b);
    est = ergo::simulate_reflected(p, a, b, sc);
    analytic = ergo::average_cost(p, a, b);
    std::cout << "boundaries      = [" << ergo::format_sig(a) << ", "
              << ergo::format_sig(b) << "]\n";
    std::cout << "occupation_gap  = "
              << ergo::format_sig(ergo::occupation_vs_stationary(est, p, a, b))
              << "\n";
    if (!at_optimum) {
      try {
        const auto opt = ergo::solve_two_boundary(p, pi);
        std::cout << "lambda_opt      = " << ergo::format_sig(opt.lambda_star)
                  << "\n";
        if (analytic > opt.lambda_star * (1.0 + 1e-9)) {
          std::cout << "note: boundaries are above optimal (C exceeds "
                       "lambda* by "
                    << ergo::format_sig(analytic - opt.lambda_star) << ")\n";
        }
      } catch (const std::exception&) {
        // no two-boundary optimum to compare against; report the run as is
      }
    }
  }

  const double z =
      est.lambda_se > 0 ? (est.lambda_hat - analytic) / est.lambda_se : 0.0;
  std::cout << "lambda_hat      = " << ergo::format_sig(est.lambda_hat)
            << " +- " << ergo::format_sig(est.lambda_se) << "\n"
            << "alpha_hat       = " << ergo::format_sig(est.alpha_hat) << "\n"
            << "beta_hat        = " << ergo::format_sig(est.beta_hat) << "\n"
            << "analytic_cost   = " << ergo::format_sig(analytic) << "\n"
            << "z_score         = " << ergo::format_sig(z) << "\n";
  if (as_json) {
    json j;
    j["lambda_hat"] = est.lambda_hat;
    j["lambda_se"] = est.lambda_se;
    j["alpha_hat"] = est.alpha_hat;
    j["beta_hat"] = est.beta_hat;
    j["analytic_cost"] = analytic;
    j["z_score"] = z;
    std::cout << j.dump(2) << "\n";
  }
  if (!out_csv.empty()) {
    write_sim_csv(out_csv, est);
    std::cout << "sim csv         -> " << out_csv << "\n";
  }
  if (std::fabs(z) > 4.0) {
    std::cout << "verification failed: |z| > 4\n";
    return kExitVerification;
  }
  return kExitOk;
}

int run_eval(const std::string& config_path, std::vector<std::string> args) {
  if (args.empty()) throw ergo::InputError("eval: missing quantity");
  const std::string quantity = args.front();
  args.erase(args.begin());
  std::vector<double> xs;
  for (const auto& a : args) {
    try {
      xs.push_back(std::stod(a));
    } catch (...) {
      throw ergo::InputError("eval: non-numeric argument '" + a + "'");
    }
  }
  const ergo::RunConfig cfg = ergo::load_config(config_path);
  auto built = ergo::build_problem(cfg);
  const ergo::Problem& p = built.problem;
  auto need = [&](std::size_t n) {
    if (xs.size() != n)
      throw ergo::InputError("eval " + quantity + ": expected " +
                             std::to_string(n) + " numeric argument(s)");
  };
  auto pi = [&]() { return ergo::pi_pair(p, built.bracket1, built.bracket2); };
  auto print = [](double v) { std::cout << ergo::format_sig(v, 17) << "\n"; };

  if (quantity == "Sprime") {
    need(1);
    print(ergo::scale_density(p, xs[0]));
  } else if (quantity == "mprime") {
    need(1);
    print(ergo::speed_density(p, xs[0]));
  } else if (quantity == "m") {
    need(2);
    print(ergo::speed_measure(p, xs[0], xs[1]));
  } else if (quantity == "pi1") {
    need(1);
    print(p.cost.c(xs[0]) + p.cost.q_d * p.diffusion.mu(xs[0]));
  } else if (quantity == "pi2") {
    need(1);
    print(p.cost.c(xs[0]) - p.cost.q_u * p.diffusion.mu(xs[0]));
  } else if (quantity == "C") {
    need(2);
    print(ergo::average_cost(p, xs[0], xs[1]));
  } else if (quantity == "I1") {
    need(2);
    print(ergo::foc_I1(p, xs[0], xs[1]));
  } else if (quantity == "I2") {
    need(2);
    print(ergo::foc_I2(p, xs[0], xs[1]));
  } else if (quantity == "g") {
    need(1);
    print(ergo::g_function(p, pi(), xs[0]));
  } else if (quantity == "xhat") {
    need(0);
    const auto pp = pi();
    std::cout << ergo::format_sig(pp.xhat1, 17) << " "
              << ergo::format_sig(pp.xhat2, 17) << "\n";
  } else if (quantity == "vprime" || quantity == "p") {
    need(1);
    const auto pp = pi();
    const auto sol = ergo::solve_two_boundary(p, pp);
    if (quantity == "vprime")
      print(ergo::marginal_value(p, sol, xs[0]));
    else
      print(ergo::convex_weight(p, sol, xs[0]));
  } else {
    throw ergo::InputError(
        "eval: unknown quantity '" + quantity +
        "' (expected Sprime|mprime|m|pi1|pi2|C|I1|I2|g|xhat|vprime|p)");
  }
  return kExitOk;
}

int run_catalog_list() {
  for (const auto& entry : ergo::catalog_entries()) {
    std::cout << entry.id << ": " << entry.summary << "\n  parameters:";
    for (const auto& param : entry.params) {
      std::cout << ' ' << param.name;
      if (param.required)
        std::cout << " (required)";
      else
        std::cout << "=" << ergo::format_sig(param.default_value);
    }
    std::cout << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"long-run average-cost reflection policies for 1-d diffusions"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  auto* solve = app.add_subcommand("solve", "solve for the optimal boundaries");
  solve->add_option("--config", solve_opt.config_path, "config file")->required();
  solve->add_option("--one-sided", solve_opt.one_sided, "down|up")
      ->check(CLI::IsMember({"down", "up"}));
  double fix_a_val = 0.0, fix_b_val = 0.0;
  auto* fix_a_opt = solve->add_option("--fix-a", fix_a_val, "exogenous lower boundary");
  auto* fix_b_opt = solve->add_option("--fix-b", fix_b_val, "exogenous upper boundary");
  solve->add_option("--out", solve_opt.out_csv, "value-table CSV path");
  solve->add_flag("--json", solve_opt.as_json, "emit JSON after the report");
  solve->add_flag("--dump-config", solve_opt.dump, "echo the canonical config and exit");

  std::string sweep_config, sweep_out;
  auto* sweep = app.add_subcommand("sweep", "solve across a parameter grid, emit CSV");
  sweep->add_option("--config", sweep_config, "config file")->required();
  sweep->add_option("--out", sweep_out, "CSV path (stdout if omitted)");

  std::string sim_config, sim_out;
  bool sim_at_optimum = false, sim_json = false;
  std::vector<double> sim_boundaries;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo verification run");
  simulate->add_option("--config", sim_config, "config file")->required();
  simulate->add_flag("--at-optimum", sim_at_optimum, "solve first, simulate at the optimum");
  simulate->add_option("--boundaries", sim_boundaries, "explicit boundaries")
      ->expected(1, 2);
  simulate->add_flag("--json", sim_json, "emit JSON after the report");
  simulate->add_option("--out", sim_out, "histogram and per-replicate CSV path");

  std::string eval_config;
  auto* eval = app.add_subcommand("eval", "print one model quantity");
  eval->add_option("--config", eval_config, "config file")->required();
  // everything after the quantity name passes through verbatim, so negative
  // boundary values need no escaping
  eval->prefix_command();

  auto* catalog = app.add_subcommand("catalog", "catalog information");
  auto* catalog_list = catalog->add_subcommand("list", "list catalog models");

  try {
    app.parse(argc, argv);
    if (solve->parsed()) {
      if (*fix_a_opt) solve_opt.fix_a = fix_a_val;
      if (*fix_b_opt) solve_opt.fix_b = fix_b_val;
      return run_solve(solve_opt);
    }
    if (sweep->parsed()) return run_sweep(sweep_config, sweep_out);
    if (simulate->parsed())
      return run_simulate(sim_config, sim_at_optimum, sim_boundaries, sim_json,
                          sim_out);
    if (eval->parsed()) return run_eval(eval_config, eval->remaining());
    if (catalog->parsed() && catalog_list->parsed()) return run_catalog_list();
    std::cerr << "no subcommand\n";
    return kExitInput;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ergo::ExistenceError& e) {
    std::cout << "existence not established: " << e.what() << "\n";
    return kExitExistence;
  } catch (const ergo::TailError& e) {
    std::cout << "existence not established: " << e.what() << "\n";
    return kExitExistence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

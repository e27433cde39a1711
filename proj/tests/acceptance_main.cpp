// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances and runtime budgets are pinned here, in code.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ergo/catalog.hpp"
#include "ergo/closedform.hpp"
#include "ergo/config.hpp"
#include "ergo/errors.hpp"
#include "ergo/model.hpp"
#include "ergo/quad.hpp"
#include "ergo/rng.hpp"
#include "ergo/sim.hpp"
#include "ergo/solver.hpp"
#include "ergo/value.hpp"

using namespace ergo;
namespace cf = ergo::closedform;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream why;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) why << "; ";
      ok = false;
      why << what;
    }
  }
};

Problem model(const std::string& id, const std::map<std::string, double>& params) {
  return catalog_problem(catalog_validate(id, params));
}

PiPair pi_of(const Problem& p) { return pi_pair(p, {-50.0, 50.0}, {-50.0, 50.0}); }

struct SolvedModel {
  std::string name;
  Problem p;
  PiPair pi;
  TwoBoundarySolution sol;
};

std::vector<SolvedModel> two_boundary_catalog() {
  std::vector<std::pair<std::string, Problem>> models;
  models.emplace_back("bm_piecewise(mu=0.1)",
                      model("bm_piecewise",
                            {{"mu", 0.1}, {"sigma", 1.0}, {"k1", 0.5}, {"k2", 1.0}}));
  models.emplace_back("bm_piecewise(driftless)",
                      model("bm_piecewise",
                            {{"mu", 0.0}, {"sigma", 1.0}, {"k1", 0.5}, {"k2", 1.0}}));
  models.emplace_back("bm_symmetric",
                      model("bm_symmetric", {{"mu", 0.1}, {"sigma", 1.0}, {"k", 1.0}}));
  models.emplace_back("ou_linear_cost",
                      model("ou_linear_cost", {{"alpha", 0.1},
                                               {"beta", 0.1},
                                               {"sigma", 0.5},
                                               {"k1", 0.5},
                                               {"k2", 1.0}}));
  models.emplace_back("symmetric_linear_drift",
                      model("symmetric_linear_drift", {{"mu", 0.05}, {"sigma", 1.0}}));
  models.emplace_back("exp_cost_driftless", model("exp_cost_driftless", {{"sigma", 1.0}}));
  models.emplace_back("alternating_drift",
                      model("alternating_drift", {{"mu", 0.1}, {"sigma", 1.0}, {"q", 1.0}}));
  std::vector<SolvedModel> out;
  for (auto& [name, p] : models) {
    SolvedModel sm{name, p, pi_of(p), {}};
    sm.sol = solve_two_boundary(sm.p, sm.pi);
    out.push_back(std::move(sm));
  }
  return out;
}

// criterion 1 -----------------------------------------------------------

Check criterion_1(double elapsed_limit, double& seconds) {
  Check c;
  const auto t0 = Clock::now();
  const Problem p = model("bm_piecewise",
                          {{"mu", 0.0}, {"sigma", 1.0}, {"k1", 0.5}, {"k2", 1.0}});
  const auto sol = solve_two_boundary(p, pi_of(p));
  seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  const double a_exact = -std::sqrt(8.0 / 3.0);
  const double b_exact = std::sqrt(2.0 / 3.0);
  c.expect(std::fabs(sol.a_star - a_exact) < 1e-5, "a* off the closed form");
  c.expect(std::fabs(sol.b_star - b_exact) < 1e-5, "b* off the closed form");
  c.expect(std::fabs(sol.lambda_star - p.cost.c(sol.b_star)) <=
               1e-6 * std::fabs(p.cost.c(sol.b_star)),
           "lambda* != c(b*) at 1e-6 relative");
  c.expect(seconds < elapsed_limit, "runtime over budget");
  return c;
}

// criterion 2 -----------------------------------------------------------

Check criterion_2(double& seconds) {
  Check c;
  const auto t0 = Clock::now();
  const RunConfig cfg = parse_config(
      "[problem]\ndrift = 0.05*x\nsigma = 1\ncost = abs(x)\n");
  const auto built = build_problem(cfg);
  const auto pi = pi_pair(built.problem, built.bracket1, built.bracket2);
  const auto sol = solve_two_boundary(built.problem, pi);
  seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  c.expect(std::fabs(sol.b_star - 0.972044) < 1e-4, "b* != kappa*");
  c.expect(std::fabs(sol.a_star + 0.972044) < 1e-4, "a* != -kappa*");
  c.expect(seconds < 5.0, "runtime over 5 s");
  return c;
}

// criterion 3 -----------------------------------------------------------

Check criterion_3(double& seconds) {
  Check c;
  const auto t0 = Clock::now();
  const Problem p = model("bm_symmetric", {{"mu", 0.1}, {"sigma", 1.0}, {"k", 1.0}});
  const auto sol = solve_two_boundary(p, pi_of(p));
  seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  const auto [a_cf, b_cf] = cf::bm_symmetric_drift(0.1, 1.0, 1.0);
  c.expect(std::fabs(sol.a_star - a_cf) < 1e-5, "a* off the logarithmic closed form");
  c.expect(std::fabs(sol.b_star - (-sol.a_star - 0.2)) < 1e-6, "b* != -a* - 2mu/k");
  (void)b_cf;
  return c;
}

// criterion 4 -----------------------------------------------------------

Check criterion_4(double& seconds) {
  Check c;
  const auto t0 = Clock::now();
  const Problem solvable = model("exp_cost_driftless", {{"sigma", 1.0}});
  const auto sol = solve_two_boundary(solvable, pi_of(solvable));
  c.expect(std::fabs(sol.b_star - 1.6783469900166607) < 1e-4,
           "sigma=1 boundary off");
  c.expect(!cf::exp_cost_boundary(1.5).has_value(),
           "closed form must report non-existence at sigma=1.5");
  bool raised = false;
  try {
    const Problem impossible = model("exp_cost_driftless", {{"sigma", 1.5}});
    solve_two_boundary(impossible, pi_of(impossible));
  } catch (const ExistenceError&) {
    raised = true;
  }
  c.expect(raised, "generic solver must raise the existence diagnostic");
  seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return c;
}

// criterion 5 -----------------------------------------------------------

Check criterion_5(double& seconds) {
  Check c;
  const auto t0 = Clock::now();
  SplitMix64 rng(20250809);
  std::vector<std::pair<std::string, Problem>> models;
  models.emplace_back("bm_piecewise(mu=0.1)",
                      model("bm_piecewise",
                            {{"mu", 0.1}, {"sigma", 1.0}, {"k1", 0.5}, {"k2", 1.0}}));
  models.emplace_back("bm_piecewise(driftless)",
                      model("bm_piecewise",
                            {{"mu", 0.0}, {"sigma", 1.0}, {"k1", 0.5}, {"k2", 1.0}}));
  models.emplace_back("bm_symmetric",
                      model("bm_symmetric", {{"mu", 0.1}, {"sigma", 1.0}, {"k", 1.0}}));
  models.emplace_back("ou_linear_cost",
                      model("ou_linear_cost", {{"alpha", 0.1},
                                               {"beta", 0.1},
                                               {"sigma", 0.5},
                                               {"k1", 0.5},
                                               {"k2", 1.0}}));
  models.emplace_back("symmetric_linear_drift",
                      model("symmetric_linear_drift", {{"mu", 0.05}, {"sigma", 1.0}}));
  models.emplace_back("exp_cost_driftless", model("exp_cost_driftless", {{"sigma", 1.0}}));
  models.emplace_back("alternating_drift",
                      model("alternating_drift", {{"mu", 0.1}, {"sigma", 1.0}, {"q", 1.0}}));
  models.emplace_back("ou_one_sided",
                      model("ou_one_sided", {{"mu", 1.0}, {"sigma", 1.0}, {"q_d", 0.1}}));

  for (const auto& [name, p] : models) {
    const PiPair pi = pi_of(p);
    for (int i = 0; i < 20; ++i) {
      const double a = -3.0 + 2.7 * rng.uniform();
      const double b = 0.3 + 2.7 * rng.uniform();

      // canonical identity
      auto mu_m = [&](double t) { return p.diffusion.mu(t) * speed_density(p, t); };
      const double lhs =
          integrate(mu_m, a, b, 1e-11, kinks_in(p.diffusion.kinks, a, b)).value;
      const double rhs = 1.0 / scale_density(p, b) - 1.0 / scale_density(p, a);
      c.expect(std::fabs(lhs - rhs) <= 1e-8 * (std::fabs(rhs) + 1.0),
               name + ": canonical identity");

      // I1 - I2 = (pi2(a) - pi1(b)) m(a,b)
      const double i1 = foc_I1(p, a, b);
      const double i2 = foc_I2(p, a, b);
      const double prod = (pi.pi2(a) - pi.pi1(b)) * speed_measure(p, a, b);
      const double scale = std::fabs(i1) + std::fabs(i2) + std::fabs(prod) + 1.0;
      c.expect(std::fabs(i1 - i2 - prod) <= 1e-8 * scale, name + ": I1-I2 identity");

      // anchor invariance of C(a,b)
      Problem shifted = p;
      shifted.anchor = 0.9;
      const double c0 = average_cost(p, a, b);
      const double c1 = average_cost(shifted, a, b);
      c.expect(std::fabs(c0 - c1) <= 1e-8 * (std::fabs(c0) + 1.0),
               name + ": anchor invariance");

      // stationary density normalisation
      auto dens = [&](double t) { return stationary_density(p, a, b, t); };
      const double total =
          integrate(dens, a, b, 1e-10, kinks_in(p.diffusion.kinks, a, b)).value;
      c.expect(std::fabs(total - 1.0) <= 1e-8, name + ": density normalisation");
      if (!c.ok) break;
    }
    if (!c.ok) break;
  }
  seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  c.expect(seconds < 30.0, "runtime over 30 s");
  return c;
}

// criterion 6 -----------------------------------------------------------

Check criterion_6(const std::vector<SolvedModel>& solved, double& seconds) {
  Check c;
  const auto t0 = Clock::now();
  for (const auto& sm : solved) {
    const double ftol = 1e-6 * (sm.p.cost.q_u + sm.p.cost.q_d);
    c.expect(std::fabs(sm.sol.residual_I1) < ftol, sm.name + ": |I1| over tol");
    c.expect(std::fabs(sm.sol.residual_I2) < ftol, sm.name + ": |I2| over tol");

    // 32x32 neighbourhood grid never beats C(a*, b*)
    const double C_star = sm.sol.lambda_star;
    const double span = sm.sol.b_star - sm.sol.a_star;
    const double inner = 0.45 * span;
    bool grid_ok = true;
    for (int i = 0; i < 32 && grid_ok; ++i) {
      for (int j = 0; j < 32; ++j) {
        const double a = sm.sol.a_star - 2.0 + (2.0 + inner) * i / 31.0;
        const double b = sm.sol.b_star - inner + (inner + 2.0) * j / 31.0;
        if (a >= b) continue;
        if (average_cost(sm.p, a, b) < C_star - 1e-9) {
          grid_ok = false;
          break;
        }
      }
    }
    c.expect(grid_ok, sm.name + ": C grid beats the optimum");

    // g strictly increasing on a 256-point domain grid
    const double hi = g_domain_upper(sm.p, sm.pi);
    const double lo = hi - 2.0 * std::max(1.0, span);
    double prev = -1e300;
    bool inc = true;
    for (int i = 0; i < 256; ++i) {
      const double a = lo + (hi - lo) * i / 255.0;
      const double g = g_function(sm.p, sm.pi, a);
      if (g <= prev) {
        inc = false;
        break;
      }
      prev = g;
    }
    c.expect(inc, sm.name + ": g not strictly increasing");
    if (!c.ok) break;
  }
  seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return c;
}

// criterion 7 -----------------------------------------------------------

Check criterion_7(const std::vector<SolvedModel>& solved, double& seconds) {
  Check c;
  const auto t0 = Clock::now();
  for (const auto& sm : solved) {
    const double qu = sm.p.cost.q_u, qd = sm.p.cost.q_d;
    c.expect(std::fabs(marginal_value(sm.p, sm.sol, sm.sol.a_star) + qu) < 1e-8,
             sm.name + ": v'(a*) != -q_u");
    c.expect(std::fabs(marginal_value(sm.p, sm.sol, sm.sol.b_star) - qd) < 1e-8,
             sm.name + ": v'(b*) != q_d");
    c.expect(std::fabs(convex_weight(sm.p, sm.sol, sm.sol.a_star) - 1.0) < 1e-7,
             sm.name + ": p(a*) != 1");
    c.expect(std::fabs(convex_weight(sm.p, sm.sol, sm.sol.b_star)) < 1e-8,
             sm.name + ": p(b*) != 0");

    const ValueTable table = build_value_table(sm.p, sm.sol, 1025);
    c.expect(table.vprime_min >= -qu - 1e-8, sm.name + ": v' below -q_u");
    c.expect(table.vprime_max <= qd + 1e-8, sm.name + ": v' above q_d");

    const bool driftless = sm.name.find("driftless") != std::string::npos ||
                           sm.name == "exp_cost_driftless";
    if (driftless) {
      c.expect(table.convexity_min >= -1e-9, sm.name + ": driftless v'' < 0");
    }
    if (!c.ok) break;
  }

  // HJB residual decays at the O(h^2) rate on the curved driftless model
  const auto& exp_model = *std::find_if(
      solved.begin(), solved.end(),
      [](const SolvedModel& sm) { return sm.name == "exp_cost_driftless"; });
  const double r129 = build_value_table(exp_model.p, exp_model.sol, 129).hjb_residual_max;
  const double r257 = build_value_table(exp_model.p, exp_model.sol, 257).hjb_residual_max;
  c.expect(r129 > 0.0 && r129 / r257 > 2.5 && r129 / r257 < 8.0,
           "HJB residual not ~4x smaller at doubled grid");
  seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return c;
}

// criterion 8 -----------------------------------------------------------

Check criterion_8(double& seconds) {
  Check c;
  const auto t0 = Clock::now();
  double prev_a = 0, prev_b = 0, prev_l = 0;
  bool first = true;
  for (double sigma : {0.5, 0.75, 1.0}) {
    const Problem p = model(
        "bm_piecewise", {{"mu", 0.0}, {"sigma", sigma}, {"k1", 1.0}, {"k2", 1.0}});
    const auto sol = solve_two_boundary(p, pi_of(p));
    if (!first) {
      c.expect(sol.a_star < prev_a, "a* did not fall with volatility");
      c.expect(sol.b_star > prev_b, "b* did not rise with volatility");
      c.expect(sol.lambda_star > prev_l, "lambda* did not rise with volatility");
    }
    prev_a = sol.a_star;
    prev_b = sol.b_star;
    prev_l = sol.lambda_star;
    first = false;
  }

  // elasticities at theta = k1/k2 = 1 by central differences of the solver
  const double h = 1e-3;
  auto boundaries_at = [&](double k1, double k2) {
    const Problem p = model(
        "bm_piecewise", {{"mu", 0.0}, {"sigma", 1.0}, {"k1", k1}, {"k2", k2}});
    const auto sol = solve_two_boundary(p, pi_of(p));
    return std::array<double, 2>{sol.a_star, sol.b_star};
  };
  const auto up1 = boundaries_at(std::exp(h), 1.0);
  const auto dn1 = boundaries_at(std::exp(-h), 1.0);
  const auto up2 = boundaries_at(1.0, std::exp(h));
  const auto dn2 = boundaries_at(1.0, std::exp(-h));
  const double e_a_k1 = (std::log(-up1[0]) - std::log(-dn1[0])) / (2 * h);
  const double e_b_k1 = (std::log(up1[1]) - std::log(dn1[1])) / (2 * h);
  const double e_a_k2 = (std::log(-up2[0]) - std::log(-dn2[0])) / (2 * h);
  const double e_b_k2 = (std::log(up2[1]) - std::log(dn2[1])) / (2 * h);
  c.expect(std::fabs(e_a_k1 + 0.75) < 1e-4, "elasticity of a* in k1 != -3/4");
  c.expect(std::fabs(e_b_k1 - 0.25) < 1e-4, "elasticity of b* in k1 != 1/4");
  c.expect(std::fabs(e_a_k2 - 0.25) < 1e-4, "elasticity of a* in k2 != 1/4");
  c.expect(std::fabs(e_b_k2 + 0.75) < 1e-4, "elasticity of b* in k2 != -3/4");
  seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return c;
}

// criterion 9 -----------------------------------------------------------

Check criterion_9(double& seconds) {
  Check c;
  const auto t0 = Clock::now();
  const Problem p = model(
      "bm_piecewise", {{"mu", 0.0}, {"sigma", 1.0}, {"k1", 1.0}, {"k2", 1.0}});
  SimConfig cfg;
  cfg.dt = 1e-3;
  cfg.horizon = 2000.0;
  cfg.burn_in = 100.0;
  cfg.replicates = 16;
  cfg.base_seed = 1234;
  cfg.x0 = 0.0;
  cfg.bins = 32;
  const SimEstimate est = simulate_reflected(p, -1.0, 1.0, cfg);

  c.expect(std::fabs(est.lambda_hat - 1.0) <= 3.0 * est.lambda_se,
           "lambda_hat outside 3 se of 1.0");
  c.expect(std::fabs(est.lambda_hat - 1.0) < 0.02, "lambda_hat off by over 2%");
  c.expect(std::fabs(est.alpha_hat - 0.25) <= 3.0 * est.alpha_se,
           "alpha_hat outside 3 se of 0.25");
  c.expect(std::fabs(est.beta_hat - 0.25) <= 3.0 * est.beta_se,
           "beta_hat outside 3 se of 0.25");
  c.expect(occupation_vs_stationary(est, p, -1.0, 1.0) < 0.02,
           "occupation sup-norm gap over 0.02");

  // deterministic rerun, bit-identical
  const SimEstimate rerun = simulate_reflected(p, -1.0, 1.0, cfg);
  bool identical = est.lambda_hat == rerun.lambda_hat &&
                   est.lambda_se == rerun.lambda_se &&
                   est.alpha_hat == rerun.alpha_hat &&
                   est.beta_hat == rerun.beta_hat;
  for (std::size_t i = 0; i < est.bin_mass.size(); ++i) {
    identical = identical && est.bin_mass[i] == rerun.bin_mass[i];
  }
  c.expect(identical, "rerun not bit-identical");

  // discretisation trend: the coarser step sits at least as far from C(a,b)
  SimConfig coarse = cfg;
  coarse.dt = 4e-3;
  coarse.replicates = 8;
  const SimEstimate est_coarse = simulate_reflected(p, -1.0, 1.0, coarse);
  c.expect(std::fabs(est_coarse.lambda_hat - 1.0) + 3.0 * est_coarse.lambda_se >=
               std::fabs(est.lambda_hat - 1.0),
           "bias did not shrink with dt within noise");

  seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  c.expect(seconds < 60.0, "runtime over 60 s");
  return c;
}

// criterion 10 ----------------------------------------------------------

Check criterion_10(double& seconds) {
  Check c;
  const auto t0 = Clock::now();
  const double zeta = cf::ou_one_sided_zeta(1.0, 0.1);
  double ratio0 = 0.0;
  for (double sigma : {0.5, 1.0, 2.0}) {
    const Problem p = model("ou_one_sided",
                            {{"mu", 1.0}, {"sigma", sigma}, {"q_d", 0.1}});
    const auto sol = solve_one_sided_down(p, pi_of(p));
    const double ratio = sol.boundary / sigma;
    if (ratio0 == 0.0) ratio0 = ratio;
    c.expect(std::fabs(ratio - ratio0) < 1e-6, "boundary/sigma not stable");
    c.expect(std::fabs(ratio - zeta) < 1e-5, "solver disagrees with zeta*");
  }

  // simulated long-run cost at b* within 3 se of pi1(b*)
  const Problem p = model("ou_one_sided", {{"mu", 1.0}, {"sigma", 1.0}, {"q_d", 0.1}});
  const PiPair pi = pi_of(p);
  const auto sol = solve_one_sided_down(p, pi);
  SimConfig cfg;
  cfg.dt = 1e-3;
  cfg.horizon = 1000.0;
  cfg.burn_in = 50.0;
  cfg.replicates = 8;
  cfg.base_seed = 5150;
  cfg.x0 = 0.0;
  const SimEstimate est =
      simulate_one_sided(p, sol.boundary, ControlSide::down_control, cfg);
  c.expect(std::fabs(est.lambda_hat - pi.pi1(sol.boundary)) <= 3.0 * est.lambda_se,
           "simulated lambda outside 3 se of pi1(b*)");

  // J1 minimality around the boundary
  const double J_at = one_sided_cost(p, sol.boundary, ControlSide::down_control);
  c.expect(one_sided_cost(p, sol.boundary + 0.1, ControlSide::down_control) > J_at,
           "J1(b*+0.1) not larger");
  c.expect(one_sided_cost(p, sol.boundary - 0.1, ControlSide::down_control) > J_at,
           "J1(b*-0.1) not larger");
  seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return c;
}

// criterion 11 ----------------------------------------------------------

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::filesystem::path& path) {
  CsvTable t;
  std::ifstream in(path);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (first) {
      t.header = cells;
      first = false;
    } else {
      t.rows.push_back(cells);
    }
  }
  return t;
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(ERGOCTL_PATH) + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

Check criterion_11(double& seconds) {
  Check c;
  const auto t0 = Clock::now();
  const auto dir = std::filesystem::path("acceptance_out");
  std::filesystem::create_directories(dir);

  auto write = [&](const std::string& name, const std::string& body) {
    const auto path = dir / name;
    std::ofstream(path) << body;
    return path;
  };

  // figure 1: mean-reverting boundaries vs k2 at two volatilities
  for (const char* sigma : {"0.5", "0.75"}) {
    const auto cfg = write(std::string("fig1_") + sigma + ".cfg",
                           std::string("[problem]\ncatalog = ou_linear_cost\n"
                                       "alpha = 0.1\nbeta = 0.1\nk1 = 0.5\nk2 = 1\nsigma = ") +
                               sigma +
                               "\n[sweep]\nparameter = k2\ngrid = 0.6:2.0:0.2\n");
    const int rc = run_tool("sweep --config " + cfg.string() + " --out " +
                            (dir / (std::string("fig1_") + sigma + ".csv")).string());
    c.expect(rc == 0, std::string("fig1 sweep failed at sigma=") + sigma);
  }
  const CsvTable lo = read_csv(dir / "fig1_0.5.csv");
  const CsvTable hi = read_csv(dir / "fig1_0.75.csv");
  c.expect(lo.rows.size() == 8 && hi.rows.size() == 8, "fig1 must have 8 rows per curve");
  if (c.ok) {
    for (std::size_t i = 0; i < 8; ++i) {
      const double a_lo = std::stod(lo.rows[i][2]);
      const double b_lo = std::stod(lo.rows[i][3]);
      const double a_hi = std::stod(hi.rows[i][2]);
      const double b_hi = std::stod(hi.rows[i][3]);
      if (i > 0) {
        c.expect(a_lo < std::stod(lo.rows[i - 1][2]) &&
                     b_lo < std::stod(lo.rows[i - 1][3]),
                 "fig1: boundaries must fall as k2 rises (sigma=0.5)");
        c.expect(a_hi < std::stod(hi.rows[i - 1][2]) &&
                     b_hi < std::stod(hi.rows[i - 1][3]),
                 "fig1: boundaries must fall as k2 rises (sigma=0.75)");
      }
      c.expect(a_hi < a_lo && b_hi > b_lo,
               "fig1: the high-volatility curve must enclose the low one");
      if (!c.ok) break;
    }
  }

  // figure 2: +-kappa* sigma linearity across volatility
  const auto fig2 = write("fig2.cfg",
                          "[problem]\ncatalog = symmetric_linear_drift\nmu = 0.05\n"
                          "[sweep]\nparameter = sigma\ngrid = 0.25:1.5:0.25\n");
  c.expect(run_tool("sweep --config " + fig2.string() + " --out " +
                    (dir / "fig2.csv").string()) == 0,
           "fig2 sweep failed");
  const CsvTable f2 = read_csv(dir / "fig2.csv");
  c.expect(f2.rows.size() == 6, "fig2 must have 6 rows");
  if (c.ok) {
    const double kappa = cf::symmetric_kappa(0.05);
    for (const auto& row : f2.rows) {
      const double sigma = std::stod(row[1]);
      const double a = std::stod(row[2]);
      const double b = std::stod(row[3]);
      c.expect(std::fabs(b / sigma - kappa) < 1e-6 && std::fabs(-a / sigma - kappa) < 1e-6,
               "fig2: boundaries not linear in sigma at 1e-6");
      if (!c.ok) break;
    }
  }

  // figure 3: one-sided multiplier decreasing in the reversion rate
  const auto fig3 = write("fig3.cfg",
                          "[problem]\ncatalog = ou_one_sided\nmu = 1\nq_d = 0.1\n"
                          "[solver]\nmode = down\n"
                          "[sweep]\nparameter = mu\ngrid = 0.25:2.0:0.25\n");
  c.expect(run_tool("sweep --config " + fig3.string() + " --out " +
                    (dir / "fig3.csv").string()) == 0,
           "fig3 sweep failed");
  const CsvTable f3 = read_csv(dir / "fig3.csv");
  c.expect(f3.rows.size() == 8, "fig3 must have 8 rows");
  if (c.ok) {
    double prev = 1e300;
    for (const auto& row : f3.rows) {
      const double b = std::stod(row[3]);  // sigma = 1: boundary == zeta*
      c.expect(b < prev, "fig3: zeta* must decrease in mu");
      prev = b;
      if (!c.ok) break;
    }
  }

  seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  c.expect(seconds < 120.0, "runtime over 2 minutes");
  return c;
}

}  // namespace

int main() {
  int failures = 0;
  double total = 0.0;
  const auto report = [&](int id, const char* title, const Check& c, double seconds) {
    total += seconds;
    if (c.ok) {
      std::printf("PASS criterion %2d: %s (%.2fs)\n", id, title, seconds);
    } else {
      std::printf("FAIL criterion %2d: %s (%.2fs) -- %s\n", id, title, seconds,
                  c.why.str().c_str());
      ++failures;
    }
    std::fflush(stdout);
  };

  try {
    double s = 0.0;
    Check c = criterion_1(1.0, s);
    report(1, "closed-form agreement, asymmetric driftless Brownian", c, s);
    c = criterion_2(s);
    report(2, "kappa* reproduction from expression input", c, s);
    c = criterion_3(s);
    report(3, "symmetric drifted Brownian closed form", c, s);
    c = criterion_4(s);
    report(4, "existence condition of the exponential-cost model", c, s);
    c = criterion_5(s);
    report(5, "identity suite on the catalog at 1e-8", c, s);

    const auto solved = two_boundary_catalog();
    c = criterion_6(solved, s);
    report(6, "optimality structure at every catalog optimum", c, s);
    c = criterion_7(solved, s);
    report(7, "value-function suite", c, s);
    c = criterion_8(s);
    report(8, "comparative statics and elasticities", c, s);
    c = criterion_9(s);
    report(9, "Monte Carlo verification of the driftless optimum", c, s);
    c = criterion_10(s);
    report(10, "one-sided suite", c, s);
    c = criterion_11(s);
    report(11, "figure-data reproduction via the CLI", c, s);
  } catch (const std::exception& e) {
    std::printf("FAIL: acceptance aborted by exception: %s\n", e.what());
    return 1;
  }

  std::printf("acceptance total runtime: %.2fs\n", total);
  if (failures == 0) {
    std::printf("acceptance: all 11 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", failures);
  return 1;
}

#include "ergo/value.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ergo/errors.hpp"

namespace ergo {
namespace {

double pi1_at(const Problem& p, double x) {
  return p.cost.c(x) + p.cost.q_d * p.diffusion.mu(x);
}

// int_x^{b*} (pi1(t) - pi1(b*)) m'(t) dt as a single quadrature.
double tail_integral(const Problem& p, double level, double x, double b) {
  if (x == b) return 0.0;
  auto integrand = [&](double t) {
    return (pi1_at(p, t) - level) * speed_density(p, t);
  };
  std::vector<double> kinks = p.diffusion.kinks;
  kinks.insert(kinks.end(), p.cost.c.kinks.begin(), p.cost.c.kinks.end());
  return integrate(integrand, x, b, p.quad_tol, kinks_in(kinks, x, b)).value;
}

}  // namespace

double marginal_value(const Problem& p, const TwoBoundarySolution& sol, double x) {
  if (!(sol.a_star <= x && x <= sol.b_star))
    throw InputError("marginal_value: x outside [a*, b*]");
  const double level = pi1_at(p, sol.b_star);
  return p.cost.q_d + std::exp(log_scale_density(p, x)) *
                          tail_integral(p, level, x, sol.b_star);
}

double convex_weight(const Problem& p, const TwoBoundarySolution& sol, double x) {
  if (!(sol.a_star <= x && x <= sol.b_star))
    throw InputError("convex_weight: x outside [a*, b*]");
  const double level = pi1_at(p, sol.b_star);
  return -std::exp(log_scale_density(p, x)) *
         tail_integral(p, level, x, sol.b_star) / (p.cost.q_u + p.cost.q_d);
}

ValueTable build_value_table(const Problem& p, const TwoBoundarySolution& sol,
                             int n_grid) {
  if (n_grid < 16) throw InputError("build_value_table: n_grid must be >= 16");
  const double a = sol.a_star, b = sol.b_star;
  const double span = b - a;
  const double ext = 0.2 * span;

  std::vector<double> interior;
  interior.reserve(static_cast<std::size_t>(n_grid) + 8);
  for (int i = 0; i < n_grid; ++i) {
    interior.push_back(a + span * i / (n_grid - 1));
  }
  interior.back() = b;
  std::vector<double> kinks = p.diffusion.kinks;
  kinks.insert(kinks.end(), p.cost.c.kinks.begin(), p.cost.c.kinks.end());
  for (double k : kinks) {
    if (k > a && k < b) interior.push_back(k);
  }
  std::sort(interior.begin(), interior.end());
  interior.erase(std::unique(interior.begin(), interior.end(),
                             [&](double u, double v) {
                               return std::fabs(u - v) < 1e-13 * (span + 1.0);
                             }),
                 interior.end());
  interior.front() = a;
  interior.back() = b;

  const int n_ext = 8;
  ValueTable table;
  table.lambda_star = sol.lambda_star;
  auto& grid = table.grid;
  for (int i = n_ext; i >= 1; --i) grid.push_back(a - ext * i / n_ext);
  grid.insert(grid.end(), interior.begin(), interior.end());
  for (int i = 1; i <= n_ext; ++i) grid.push_back(b + ext * i / n_ext);

  const std::size_t n = grid.size();
  const std::size_t lo = static_cast<std::size_t>(n_ext);  // index of a*
  const std::size_t hi = lo + interior.size() - 1;          // index of b*

  // v' and p on the core grid in one right-to-left sweep: the defining
  // integral accumulates cell by cell, and cells never straddle a kink.
  table.v_prime.assign(n, 0.0);
  table.p_weight.assign(n, 0.0);
  const double level = pi1_at(p, b);
  const double qsum = p.cost.q_u + p.cost.q_d;
  auto integrand = [&](double t) {
    return (pi1_at(p, t) - level) * speed_density(p, t);
  };
  double acc = 0.0;  // int_{x_i}^{b*} (pi1 - pi1(b*)) m'
  for (std::size_t i = hi + 1; i-- > lo;) {
    if (i < hi) {
      acc += integrate(integrand, grid[i], grid[i + 1], p.quad_tol).value;
    }
    const double sp = std::exp(log_scale_density(p, grid[i]));
    table.v_prime[i] = p.cost.q_d + sp * acc;
    table.p_weight[i] = -sp * acc / qsum;
  }
  for (std::size_t i = 0; i < lo; ++i) {
    table.v_prime[i] = -p.cost.q_u;
    table.p_weight[i] = 1.0;
  }
  for (std::size_t i = hi + 1; i < n; ++i) {
    table.v_prime[i] = p.cost.q_d;
    table.p_weight[i] = 0.0;
  }

  // v by the trapezoid rule, v(a*) = 0, linear beyond the boundaries.
  table.v.assign(n, 0.0);
  for (std::size_t i = lo + 1; i < n; ++i) {
    table.v[i] = table.v[i - 1] + 0.5 * (table.v_prime[i] + table.v_prime[i - 1]) *
                                      (grid[i] - grid[i - 1]);
  }
  for (std::size_t i = lo; i-- > 0;) {
    table.v[i] = table.v[i + 1] - table.v_prime[i] * (grid[i + 1] - grid[i]);
  }

  // HJB residual: compare the three-point nonuniform derivative of the v'
  // column with v'' from the ODE. Kink nodes are skipped (v''' jumps there,
  // making the one-sided halves disagree at O(h)).
  auto is_kink = [&](double x) {
    for (double k : kinks) {
      if (std::fabs(x - k) < 1e-12 * (span + 1.0)) return true;
    }
    return false;
  };
  table.hjb_residual_max = 0.0;
  table.convexity_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = lo + 1; i < hi; ++i) {
    const double x = grid[i];
    const double s2 = p.diffusion.sigma(x) * p.diffusion.sigma(x);
    const double vpp =
        2.0 * (sol.lambda_star - p.cost.c(x) - p.diffusion.mu(x) * table.v_prime[i]) / s2;
    table.convexity_min = std::min(table.convexity_min, vpp);
    if (is_kink(x)) continue;
    const double hm = x - grid[i - 1];
    const double hp = grid[i + 1] - x;
    const double fd = (hm * hm * table.v_prime[i + 1] +
                       (hp * hp - hm * hm) * table.v_prime[i] -
                       hp * hp * table.v_prime[i - 1]) /
                      (hp * hm * (hp + hm));
    table.hjb_residual_max =
        std::max(table.hjb_residual_max, std::fabs(fd - vpp));
  }

  table.vprime_min = *std::min_element(table.v_prime.begin(), table.v_prime.end());
  table.vprime_max = *std::max_element(table.v_prime.begin(), table.v_prime.end());
  return table;
}

}  // namespace ergo

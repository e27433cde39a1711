#pragma once

#include <vector>

#include "ergo/solver.hpp"

namespace ergo {

/// Grid representation of the value function around the continuation region,
/// with the diagnostics that certify the free-boundary system: v' pinned to
/// -q_u / q_d outside [a*, b*], the convex weight p, and the maximal residual
/// of the stationary HJB equation (A v)(x) + c(x) = lambda over the interior.
struct ValueTable {
  std::vector<double> grid;
  std::vector<double> v;
  std::vector<double> v_prime;
  std::vector<double> p_weight;
  double lambda_star = 0.0;
  double hjb_residual_max = 0.0;
  double vprime_min = 0.0;   // over the whole grid
  double vprime_max = 0.0;
  double convexity_min = 0.0;  // min of v'' over the interior (diagnostic)
};

/// v'(x) = q_d + S'(x) int_x^{b*} (pi1(t) - pi1(b*)) m'(t) dt on [a*, b*].
/// Never clamped; range checks live in the table diagnostics.
double marginal_value(const Problem& p, const TwoBoundarySolution& sol, double x);

/// Convex weight p(x) = S'(x)/(q_u+q_d) int_x^{b*} (pi1(b*) - pi1(t)) m' dt,
/// so that v' = (1 - p) q_d - p q_u with p(a*) = 1 and p(b*) = 0.
double convex_weight(const Problem& p, const TwoBoundarySolution& sol, double x);

/// Builds the table on n_grid core points over [a*, b*] (boundaries and all
/// kinks inserted exactly) plus short linear extensions on both sides.
/// v integrates v' by the trapezoid rule with v(a*) = 0; v'' comes from the
/// HJB identity v'' = 2 (lambda* - c - mu v') / sigma^2 rather than from
/// differencing the table twice, so hjb_residual_max = max |d(v')/dx - v''|
/// directly measures how well the free-boundary ODE is satisfied. Kink nodes
/// are excluded from that max (v'' is one-sided there).
ValueTable build_value_table(const Problem& p, const TwoBoundarySolution& sol,
                             int n_grid);

}  // namespace ergo

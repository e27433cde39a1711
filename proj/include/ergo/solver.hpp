#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ergo/model.hpp"

namespace ergo {

struct TwoBoundarySolution {
  double a_star = 0.0;
  double b_star = 0.0;
  double lambda_star = 0.0;  // cost per unit time
  double residual_I1 = 0.0;
  double residual_I2 = 0.0;
  double residual_match = 0.0;  // |pi1(b*) - pi2(a*)|
  int iterations = 0;
  std::vector<std::string> warnings;
};

enum class ControlSide { down_control, up_control };

struct OneSidedSolution {
  double boundary = 0.0;
  double lambda = 0.0;
  double residual = 0.0;
  ControlSide side = ControlSide::down_control;
  int iterations = 0;
  std::vector<std::string> warnings;
};

/// Long-run average cost of reflecting at (a, b):
/// C(a,b) = [int_a^b c m' + q_u/S'(a) + q_d/S'(b)] / m(a,b).
double average_cost(const Problem& p, double a, double b);

/// First-order-condition integrals. I1 vanishes where dC/db does, I2 where
/// dC/da does:
///   I1(a,b) = int_a^b (pi1(t) - pi1(b)) m'(t) dt + (q_d+q_u)/S'(a)
///   I2(a,b) = int_a^b (pi2(t) - pi2(a)) m'(t) dt + (q_d+q_u)/S'(b)
/// At a == b, I1 reduces to (q_d+q_u)/S'(a) exactly.
double foc_I1(const Problem& p, double a, double b);
double foc_I2(const Problem& p, double a, double b);

/// The unique root b_a of pi1(x) = pi2(a) on [xhat1, inf), by geometric
/// bracket expansion from xhat1 and bisection to root_tol. Throws
/// InputError when pi2(a) < pi1(xhat1) (a outside the matching domain) and
/// ExistenceError when the expansion budget is exhausted (a limiting
/// assumption (ii) failure).
double b_of_a(const Problem& p, const PiPair& pi, double a);

/// Upper endpoint of the set where b_of_a is defined: ahat, xhat2 or the
/// pi1 = pi2 intersection xtilde, selected by comparing pi1/pi2 at the two
/// argmins; ties resolve to the smaller endpoint.
double g_domain_upper(const Problem& p, const PiPair& pi);

/// The scalar reduction g(a) = I1(a, b_a) of the two-boundary optimality
/// system; increasing in a, negative far left and positive at the domain's
/// upper endpoint, so its unique root gives a*.
double g_function(const Problem& p, const PiPair& pi, double a);

/// Solves the two-boundary problem: root of g by downward bracket expansion
/// from the domain endpoint plus a bisection/regula-falsi hybrid, then
/// b* = b_of_a(a*) and lambda* = average_cost. FOC residuals above the
/// problem's foc tolerance, or a lambda cross-check discrepancy against
/// pi1(b*)/pi2(a*) beyond 100x that tolerance, downgrade the result with a
/// warning. Throws ExistenceError when g never changes sign within the
/// expansion budget.
TwoBoundarySolution solve_two_boundary(const Problem& p, const PiPair& pi);

/// Exogenously fixed lower boundary a: the optimal upper boundary solves
/// int_a^b (pi1(b) - pi2(t)) m'(t) dt = (q_u+q_d)/S'(b) on (max(xhat1,a), inf).
OneSidedSolution solve_b_given_a(const Problem& p, const PiPair& pi, double a);

/// Exogenously fixed upper boundary b; mirror of solve_b_given_a.
OneSidedSolution solve_a_given_b(const Problem& p, const PiPair& pi, double b);

/// One-sided problems on unbounded domains. Down control: boundary is the
/// root of l1(b) = int_{-inf}^b (pi1(b) - pi1(t)) m'(t) dt on (xhat1, inf)
/// and lambda = pi1(b*). Tail convergence of m' and c m' (condition (D1)/(U1))
/// and growth of S' along the uncontrolled tail ((D2)/(U2)) are checked
/// numerically first; violations raise TailError/ExistenceError naming the
/// condition.
OneSidedSolution solve_one_sided_down(const Problem& p, const PiPair& pi);
OneSidedSolution solve_one_sided_up(const Problem& p, const PiPair& pi);

/// Long-run average cost of one-sided reflection at the given boundary:
/// J1(b) = int_{-inf}^b pi1 m' / m(-inf, b) for down control, J2 analogously.
double one_sided_cost(const Problem& p, double boundary, ControlSide side);

/// Stationary-measure restatement of the optimality conditions:
///   r1 = E[pi1(X_inf)] - pi1(b) + (q_d+q_u)/(S'(a) m(a,b))
///   r2 = E[pi2(X_inf)] - pi2(a) + (q_d+q_u)/(S'(b) m(a,b))
/// both vanish exactly at (a*, b*).
std::pair<double, double> stationary_residuals(const Problem& p,
                                               const PiPair& pi, double a,
                                               double b);

}  // namespace ergo

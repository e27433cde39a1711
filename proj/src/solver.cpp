#include "ergo/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ergo/errors.hpp"
#include "ergo/rootfind.hpp"

namespace ergo {
namespace {

std::vector<double> pi_quad_kinks(const Problem& p) {
  std::vector<double> kinks = p.diffusion.kinks;
  kinks.insert(kinks.end(), p.cost.c.kinks.begin(), p.cost.c.kinks.end());
  std::sort(kinks.begin(), kinks.end());
  return kinks;
}

// int_a^b (f(t) - level) m'(t) dt as a single quadrature; keeping the shift
// inside the integrand avoids differencing two large integrals.
double shifted_speed_integral(const Problem& p, const ScalarFn& f, double level,
                              double a, double b) {
  if (a == b) return 0.0;
  auto integrand = [&](double t) { return (f(t) - level) * speed_density(p, t); };
  std::vector<double> kinks = pi_quad_kinks(p);
  return integrate(integrand, a, b, p.quad_tol, kinks_in(kinks, a, b)).value;
}

ScalarFn make_pi1(const Problem& p) {
  const ScalarFn c = p.cost.c;
  const ScalarFn mu = p.diffusion.mu;
  const double qd = p.cost.q_d;
  return {[c, mu, qd](double x) { return c(x) + qd * mu(x); }, {}, "pi1"};
}

ScalarFn make_pi2(const Problem& p) {
  const ScalarFn c = p.cost.c;
  const ScalarFn mu = p.diffusion.mu;
  const double qu = p.cost.q_u;
  return {[c, mu, qu](double x) { return c(x) - qu * mu(x); }, {}, "pi2"};
}

double initial_step(const Problem& p) {
  return std::max(0.5, 64.0 * p.root_tol);
}

// Semi-infinite l-functions of the single-boundary theory.
double l1_integral(const Problem& p, const PiPair& pi, double b) {
  const double level = pi.pi1(b);
  auto integrand = [&](double t) {
    return (level - pi.pi1(t)) * speed_density(p, t);
  };
  return integrate_semi_infinite(integrand, b, TailDirection::down, p.quad_tol,
                                 pi.pi1.kinks)
      .value;
}

double l2_integral(const Problem& p, const PiPair& pi, double a) {
  const double level = pi.pi2(a);
  auto integrand = [&](double t) {
    return (pi.pi2(t) - level) * speed_density(p, t);
  };
  return integrate_semi_infinite(integrand, a, TailDirection::up, p.quad_tol,
                                 pi.pi2.kinks)
      .value;
}

// (D1)/(U1): the tail speed measure and tail cost integral must converge.
// (D2)/(U2): S' must blow up along the uncontrolled tail, checked on the log
// scale at geometrically spaced probes so the test cannot overflow.
void check_one_sided_conditions(const Problem& p, double ref, ControlSide side) {
  const bool down = side == ControlSide::down_control;
  const char* c1 = down ? "(D1)" : "(U1)";
  const char* c2 = down ? "(D2)" : "(U2)";
  const TailDirection dir = down ? TailDirection::down : TailDirection::up;
  try {
    auto mp = [&](double t) { return speed_density(p, t); };
    integrate_semi_infinite(mp, ref, dir, p.quad_tol, p.diffusion.kinks);
    auto cmp = [&](double t) { return p.cost.c(t) * speed_density(p, t); };
    std::vector<double> kinks = pi_quad_kinks(p);
    integrate_semi_infinite(cmp, ref, dir, p.quad_tol, kinks);
  } catch (const TailError& e) {
    throw TailError(std::string("one-sided condition ") + c1 +
                    " violated: " + e.what());
  }
  const double sign = down ? -1.0 : 1.0;
  double prev = log_scale_density(p, ref + sign * 4.0);
  bool growing = true;
  double last = prev;
  for (int k = 3; k <= 10; ++k) {
    last = log_scale_density(p, ref + sign * std::pow(2.0, k));
    if (last <= prev) growing = false;
    prev = last;
  }
  if (!growing || last < log_scale_density(p, ref) + std::log(100.0)) {
    std::ostringstream msg;
    msg << "one-sided condition " << c2
        << " violated: S' does not diverge along the uncontrolled tail "
           "(log S' at the farthest probe = "
        << last << ")";
    throw ExistenceError(msg.str());
  }
}

}  // namespace

double average_cost(const Problem& p, double a, double b) {
  if (!(a < b)) throw InputError("average_cost: need a < b");
  const double m = speed_measure(p, a, b);
  const double qa = p.cost.q_u * std::exp(-log_scale_density(p, a));
  const double qb = p.cost.q_d * std::exp(-log_scale_density(p, b));
  return (cost_speed_integral(p, a, b) + qa + qb) / m;
}

double foc_I1(const Problem& p, double a, double b) {
  if (!(a <= b)) throw InputError("foc_I1: need a <= b");
  const ScalarFn pi1 = make_pi1(p);
  const double shifted = shifted_speed_integral(p, pi1, pi1(b), a, b);
  return shifted + (p.cost.q_d + p.cost.q_u) * std::exp(-log_scale_density(p, a));
}

double foc_I2(const Problem& p, double a, double b) {
  if (!(a <= b)) throw InputError("foc_I2: need a <= b");
  const ScalarFn pi2 = make_pi2(p);
  const double shifted = shifted_speed_integral(p, pi2, pi2(a), a, b);
  return shifted + (p.cost.q_d + p.cost.q_u) * std::exp(-log_scale_density(p, b));
}

double b_of_a(const Problem& p, const PiPair& pi, double a) {
  const double target = pi.pi2(a);
  const double f0 = pi.pi1(pi.xhat1) - target;
  // The domain endpoint itself is located by a root solve, so pi2(a) can sit
  // a rounding error below min pi1 there; within that slack b_a is xhat1.
  const double slack = 1e-7 * (1.0 + std::fabs(target) + std::fabs(pi.pi1(pi.xhat1)));
  if (f0 > slack) {
    std::ostringstream msg;
    msg << "b_of_a: a = " << a << " outside the matching domain (pi2(a) = "
        << target << " < min pi1 = " << pi.pi1(pi.xhat1) << ")";
    throw InputError(msg.str());
  }
  if (f0 >= 0.0) return pi.xhat1;
  auto f = [&](double x) { return pi.pi1(x) - target; };
  auto bracket = expand_bracket(f, pi.xhat1, f0, +1, initial_step(p));
  if (!bracket)
    throw ExistenceError(
        "b_of_a: pi1 never reaches pi2(a) within the expansion budget; "
        "limiting assumption (ii) on pi1 appears violated");
  return bracketed_root(f, bracket->lo, bracket->hi, bracket->flo,
                        bracket->fhi, 0.25 * p.root_tol)
      .x;
}

double g_domain_upper(const Problem& p, const PiPair& pi) {
  const double p1_at_1 = pi.pi1(pi.xhat1);
  const double p2_at_2 = pi.pi2(pi.xhat2);

  // ahat: where the decreasing branch of pi2 meets min pi1.
  auto find_ahat = [&]() {
    auto f = [&](double x) { return pi.pi2(x) - p1_at_1; };
    const double f0 = f(pi.xhat2);
    if (f0 >= 0.0) return pi.xhat2;
    auto bracket = expand_bracket(f, pi.xhat2, f0, -1, initial_step(p));
    if (!bracket)
      throw ExistenceError(
          "g domain: pi2 never climbs back to min pi1 on the left; limiting "
          "assumption (ii) on pi2 appears violated");
    return bracketed_root(f, bracket->lo, bracket->hi, bracket->flo,
                          bracket->fhi, 0.25 * p.root_tol)
        .x;
  };

  if (pi.xhat1 >= pi.xhat2) {
    if (p1_at_1 >= p2_at_2) return find_ahat();
    return pi.xhat2;
  }
  if (pi.pi1(pi.xhat1) >= pi.pi2(pi.xhat1)) return find_ahat();
  if (pi.pi2(pi.xhat2) >= pi.pi1(pi.xhat2)) return pi.xhat2;
  // pi1 - pi2 changes sign inside [xhat1, xhat2]: the intersection xtilde.
  auto diff = [&](double x) { return pi.pi1(x) - pi.pi2(x); };
  return bracketed_root(diff, pi.xhat1, pi.xhat2, diff(pi.xhat1),
                        diff(pi.xhat2), 0.25 * p.root_tol)
      .x;
}

double g_function(const Problem& p, const PiPair& pi, double a) {
  // At the xtilde-type domain endpoint b_a collapses onto a and root noise
  // can land it a rounding error below; the interval is degenerate there.
  const double ba = std::max(a, b_of_a(p, pi, a));
  return foc_I1(p, a, ba);
}

TwoBoundarySolution solve_two_boundary(const Problem& p, const PiPair& pi) {
  p.validate();
  TwoBoundarySolution sol;
  sol.warnings = pi.warnings;

  const double upper = g_domain_upper(p, pi);
  auto g = [&](double a) { return g_function(p, pi, a); };
  const double g_upper = g(upper);
  double a_star;
  int iterations = 0;
  if (g_upper <= 0.0) {
    // Theoretically g > 0 at the domain endpoint; landing at <= 0 means the
    // root sits at the endpoint to within quadrature noise.
    a_star = upper;
    sol.warnings.push_back("g at the domain endpoint is not positive; a* pinned there");
  } else {
    auto bracket = expand_bracket(g, upper, g_upper, -1, initial_step(p));
    if (!bracket)
      throw ExistenceError(
          "solve_two_boundary: g(a) has no sign change within the expansion "
          "budget; existence not established under weakened limits "
          "(assumption (ii) regime)");
    const auto root = bracketed_root(g, bracket->lo, bracket->hi, bracket->flo,
                                     bracket->fhi, p.root_tol);
    a_star = root.x;
    iterations = root.iterations;
  }

  sol.a_star = a_star;
  sol.b_star = b_of_a(p, pi, a_star);
  sol.iterations = iterations;
  sol.lambda_star = average_cost(p, sol.a_star, sol.b_star);
  sol.residual_I1 = foc_I1(p, sol.a_star, sol.b_star);
  sol.residual_I2 = foc_I2(p, sol.a_star, sol.b_star);
  sol.residual_match = std::fabs(pi.pi1(sol.b_star) - pi.pi2(sol.a_star));

  const double ftol = p.effective_foc_tol();
  if (std::fabs(sol.residual_I1) >= ftol || std::fabs(sol.residual_I2) >= ftol) {
    std::ostringstream msg;
    msg << "FOC residuals exceed tolerance: |I1| = " << std::fabs(sol.residual_I1)
        << ", |I2| = " << std::fabs(sol.residual_I2) << ", tol = " << ftol;
    sol.warnings.push_back(msg.str());
  }
  const double cross = std::max(std::fabs(sol.lambda_star - pi.pi1(sol.b_star)),
                                std::fabs(sol.lambda_star - pi.pi2(sol.a_star)));
  if (cross > 100.0 * ftol) {
    std::ostringstream msg;
    msg << "lambda cross-check discrepancy " << cross << " exceeds "
        << 100.0 * ftol << " (pi1(b*)/pi2(a*) vs average cost)";
    sol.warnings.push_back(msg.str());
  }
  if (!(sol.a_star < pi.xhat2) || !(sol.b_star > pi.xhat1)) {
    sol.warnings.push_back(
        "boundaries do not strictly bracket the argmins (a* < xhat2 < ... "
        "< xhat1 < b* expected)");
  }
  return sol;
}

OneSidedSolution solve_b_given_a(const Problem& p, const PiPair& pi, double a) {
  if (!std::isfinite(a)) throw InputError("solve_b_given_a: a must be finite");
  const double qsum = p.cost.q_u + p.cost.q_d;
  auto F = [&](double b) {
    const double level = pi.pi1(b);
    auto integrand = [&](double t) {
      return (level - pi.pi2(t)) * speed_density(p, t);
    };
    std::vector<double> kinks = pi_quad_kinks(p);
    const double I =
        a == b ? 0.0
               : integrate(integrand, a, b, p.quad_tol, kinks_in(kinks, a, b)).value;
    return I - qsum * std::exp(-log_scale_density(p, b));
  };
  const double start = std::max(pi.xhat1, a);
  const double f0 = F(start);
  OneSidedSolution sol;
  sol.side = ControlSide::down_control;
  if (f0 >= 0.0) {
    sol.boundary = start;
  } else {
    auto bracket = expand_bracket(F, start, f0, +1, initial_step(p));
    if (!bracket)
      throw BracketError(
          "solve_b_given_a: boundary equation has no sign change within the "
          "expansion budget");
    const auto root = bracketed_root(F, bracket->lo, bracket->hi, bracket->flo,
                                     bracket->fhi, p.root_tol);
    sol.boundary = root.x;
    sol.iterations = root.iterations;
  }
  sol.residual = F(sol.boundary);
  sol.lambda = average_cost(p, a, sol.boundary);
  return sol;
}

OneSidedSolution solve_a_given_b(const Problem& p, const PiPair& pi, double b) {
  if (!std::isfinite(b)) throw InputError("solve_a_given_b: b must be finite");
  const double qsum = p.cost.q_u + p.cost.q_d;
  auto F = [&](double a) {
    const double level = pi.pi2(a);
    auto integrand = [&](double t) {
      return (level - pi.pi1(t)) * speed_density(p, t);
    };
    std::vector<double> kinks = pi_quad_kinks(p);
    const double I =
        a == b ? 0.0
               : integrate(integrand, a, b, p.quad_tol, kinks_in(kinks, a, b)).value;
    return I - qsum * std::exp(-log_scale_density(p, a));
  };
  const double start = std::min(pi.xhat2, b);
  const double f0 = F(start);
  OneSidedSolution sol;
  sol.side = ControlSide::up_control;
  if (f0 >= 0.0) {
    sol.boundary = start;
  } else {
    auto bracket = expand_bracket(F, start, f0, -1, initial_step(p));
    if (!bracket)
      throw BracketError(
          "solve_a_given_b: boundary equation has no sign change within the "
          "expansion budget");
    const auto root = bracketed_root(F, bracket->lo, bracket->hi, bracket->flo,
                                     bracket->fhi, p.root_tol);
    sol.boundary = root.x;
    sol.iterations = root.iterations;
  }
  sol.residual = F(sol.boundary);
  sol.lambda = average_cost(p, sol.boundary, b);
  return sol;
}

OneSidedSolution solve_one_sided_down(const Problem& p, const PiPair& pi) {
  p.validate();
  check_one_sided_conditions(p, pi.xhat1, ControlSide::down_control);
  auto l1 = [&](double b) { return l1_integral(p, pi, b); };
  const double f0 = l1(pi.xhat1);
  if (!(f0 < 0.0))
    throw ExistenceError(
        "solve_one_sided_down: l1(xhat1) is not negative; unimodality of pi1 "
        "(assumption (i)) appears violated");
  auto bracket = expand_bracket(l1, pi.xhat1, f0, +1, initial_step(p));
  if (!bracket)
    throw ExistenceError(
        "solve_one_sided_down: l1 has no sign change; limiting assumption on "
        "pi1 appears violated");
  const auto root = bracketed_root(l1, bracket->lo, bracket->hi, bracket->flo,
                                   bracket->fhi, p.root_tol);
  OneSidedSolution sol;
  sol.side = ControlSide::down_control;
  sol.boundary = root.x;
  sol.iterations = root.iterations;
  sol.residual = root.fx;
  sol.lambda = pi.pi1(sol.boundary);
  const double j1 = one_sided_cost(p, sol.boundary, ControlSide::down_control);
  if (std::fabs(j1 - sol.lambda) >
      100.0 * p.effective_foc_tol() * std::max(1.0, std::fabs(sol.lambda))) {
    std::ostringstream msg;
    msg << "J1(b*) = " << j1 << " disagrees with pi1(b*) = " << sol.lambda;
    sol.warnings.push_back(msg.str());
  }
  return sol;
}

OneSidedSolution solve_one_sided_up(const Problem& p, const PiPair& pi) {
  p.validate();
  check_one_sided_conditions(p, pi.xhat2, ControlSide::up_control);
  // l2(a) = int_a^inf (pi2(t) - pi2(a)) m' dt is positive at xhat2 and
  // decreases as a moves left, mirroring l1.
  auto l2 = [&](double a) { return l2_integral(p, pi, a); };
  const double f0 = l2(pi.xhat2);
  if (!(f0 > 0.0))
    throw ExistenceError(
        "solve_one_sided_up: l2(xhat2) is not positive; unimodality of pi2 "
        "(assumption (i)) appears violated");
  auto bracket = expand_bracket(l2, pi.xhat2, f0, -1, initial_step(p));
  if (!bracket)
    throw ExistenceError(
        "solve_one_sided_up: l2 has no sign change; limiting assumption on "
        "pi2 appears violated");
  const auto root = bracketed_root(l2, bracket->lo, bracket->hi, bracket->flo,
                                   bracket->fhi, p.root_tol);
  OneSidedSolution sol;
  sol.side = ControlSide::up_control;
  sol.boundary = root.x;
  sol.iterations = root.iterations;
  sol.residual = root.fx;
  sol.lambda = pi.pi2(sol.boundary);
  return sol;
}

double one_sided_cost(const Problem& p, double boundary, ControlSide side) {
  const ScalarFn pi1 = make_pi1(p);
  const ScalarFn pi2 = make_pi2(p);
  std::vector<double> kinks = pi_quad_kinks(p);
  const TailDirection dir = side == ControlSide::down_control
                                ? TailDirection::down
                                : TailDirection::up;
  const ScalarFn& f = side == ControlSide::down_control ? pi1 : pi2;
  auto weighted = [&](double t) { return f(t) * speed_density(p, t); };
  auto mp = [&](double t) { return speed_density(p, t); };
  const double num =
      integrate_semi_infinite(weighted, boundary, dir, p.quad_tol, kinks).value;
  const double den =
      integrate_semi_infinite(mp, boundary, dir, p.quad_tol, p.diffusion.kinks)
          .value;
  return num / den;
}

std::pair<double, double> stationary_residuals(const Problem& p,
                                               const PiPair& pi, double a,
                                               double b) {
  if (!(a < b)) throw InputError("stationary_residuals: need a < b");
  const double m = speed_measure(p, a, b);
  const double qsum = p.cost.q_d + p.cost.q_u;
  auto mean_of = [&](const ScalarFn& f) {
    auto integrand = [&](double t) { return f(t) * speed_density(p, t); };
    std::vector<double> kinks = pi_quad_kinks(p);
    return integrate(integrand, a, b, p.quad_tol, kinks_in(kinks, a, b)).value / m;
  };
  const double r1 = mean_of(pi.pi1) - pi.pi1(b) +
                    qsum * std::exp(-log_scale_density(p, a)) / m;
  const double r2 = mean_of(pi.pi2) - pi.pi2(a) +
                    qsum * std::exp(-log_scale_density(p, b)) / m;
  return {r1, r2};
}

}  // namespace ergo

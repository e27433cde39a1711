#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ergo/quad.hpp"

namespace ergo {

/// A real function of one real variable with its known kink locations
/// (points where quadrature panels must be split).
struct ScalarFn {
  RealFn fn;
  std::vector<double> kinks;
  std::string label;

  double operator()(double x) const { return fn(x); }
};

/// Diffusion dX = mu(X) dt + sigma(X) dW. sigma must satisfy the
/// nondegeneracy condition sigma^2 > 0 at every queried point; kinks is the
/// union of the kink points of mu and sigma on the working interval.
struct DiffusionSpec {
  ScalarFn mu;
  ScalarFn sigma;
  std::vector<double> kinks;
};

/// Running cost flow c (c(x) >= c(0) >= 0) plus the unit prices of the
/// upward and downward controls. q_u + q_d must be positive: with both
/// prices zero the first-order-condition system degenerates.
struct CostSpec {
  ScalarFn c;
  double q_u = 1.0;
  double q_d = 1.0;
};

struct Problem {
  DiffusionSpec diffusion;
  CostSpec cost;
  double anchor = 0.0;      // base point of the scale-density integral
  double quad_tol = 1e-10;  // relative quadrature tolerance
  double root_tol = 1e-9;   // absolute root tolerance, state units
  double foc_tol = 0.0;     // 0 = auto: 1e-6 * (q_u + q_d)

  double effective_foc_tol() const {
    return foc_tol > 0 ? foc_tol : 1e-6 * (cost.q_u + cost.q_d);
  }
  /// Throws InputError when a structural invariant is broken.
  void validate() const;
};

/// Drift-adjusted cost flows pi1 = c + q_d mu and pi2 = c - q_u mu together
/// with their located minimisers. `warnings` carries the sampled-grid
/// monotonicity diagnostics (reported, not enforced: behaviour outside the
/// unimodality assumption is the caller's modelling responsibility).
struct PiPair {
  ScalarFn pi1;
  ScalarFn pi2;
  double xhat1 = 0.0;
  double xhat2 = 0.0;
  std::vector<std::string> warnings;
};

struct Interval {
  double lo, hi;
};

/// log S'(x) = -int_anchor^x 2 mu / sigma^2; kept in log form so tail
/// integrands can be formed without overflow.
double log_scale_density(const Problem& p, double x);

/// Scale density S'(x) with S'(anchor) = 1 exactly.
double scale_density(const Problem& p, double x);

/// Speed density m'(x) = 2 / (sigma^2(x) S'(x)).
double speed_density(const Problem& p, double x);

/// Speed measure m(a, b) = int_a^b m'(t) dt, split at kinks.
double speed_measure(const Problem& p, double a, double b);

/// int_a^b c(t) m'(t) dt, the running-cost term of the average cost.
double cost_speed_integral(const Problem& p, double a, double b);

/// Builds pi1/pi2 and locates their argmins inside the given brackets by
/// golden-section search refined to root_tol, with every kink point tried as
/// a candidate minimiser (piecewise-linear costs attain minima at kinks).
/// Throws BracketError when a bracket has no interior minimum.
PiPair pi_pair(const Problem& p, Interval bracket1, Interval bracket2);

/// Stationary density m'(x)/m(a,b) of the reflected process, x in [a, b].
double stationary_density(const Problem& p, double a, double b, double x);

/// Long-run rates of the boundary local times: alpha = 1/(S'(a) m(a,b)) at
/// the lower boundary, beta = 1/(S'(b) m(a,b)) at the upper.
std::pair<double, double> control_rates(const Problem& p, double a, double b);

/// Kinks of `all` that lie strictly inside (lo, hi).
std::vector<double> kinks_in(const std::vector<double>& all, double lo, double hi);

}  // namespace ergo

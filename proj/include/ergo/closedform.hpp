#pragma once

#include <optional>
#include <utility>

#include "ergo/model.hpp"

namespace ergo {

/// Exact solutions of the worked models, used as oracles for the generic
/// numeric pipeline. All internal roots are solved to 1e-10 so oracle error
/// is negligible against solver tolerances. The q_u = q_d = 1 convention of
/// the piecewise-linear Brownian examples applies except where a price
/// appears explicitly.
namespace closedform {

struct BmNodriftSolution {
  double a_star, b_star, lambda_star;
};

/// Driftless Brownian motion, c(x) = max(-k1 x, k2 x):
/// a* = -sqrt(2 k2 s^2 / (k1 (k1+k2))), b* = sqrt(2 k1 s^2 / (k2 (k1+k2))),
/// lambda* = c(b*) = k2 b*.
BmNodriftSolution bm_piecewise_nodrift(double k1, double k2, double sigma);

/// Drifted Brownian motion with symmetric piecewise-linear cost k|x|:
/// a* = (s^2/2mu) ln(1 - sqrt(1 - e^{-4 mu^2/(k s^2)})), b* = -a* - 2 mu / k.
std::pair<double, double> bm_symmetric_drift(double mu, double sigma, double k);

/// The scalar reduction g(a) of the drifted piecewise-linear Brownian model
/// in closed form; validates the generic g pointwise.
double bm_piecewise_gfun(double mu, double sigma, double k1, double k2, double a);

/// The symmetric linear-drift model mu(x) = mu*x, c = |x|, unit prices:
/// optimal boundaries are +-kappa* sigma with kappa* the unique positive
/// root of (1+mu)/(2mu) (e^{mu k^2} - 1) + 1/2 - (1+mu) k int_0^k e^{mu y^2} dy.
double symmetric_kappa(double mu);

/// h(b) = 1/2 + (e^{-b}(1+b) - 1)/sigma^2 for the exponential-cost driftless
/// model c = max(1-e^x, 1-e^{-x}).
double exp_cost_h(double sigma, double b);

/// Unique positive root of h when sigma < sqrt(2); nullopt is the documented
/// non-existence result for sigma >= sqrt(2) (h(inf) = 1/2 - 1/sigma^2 >= 0,
/// so the boundary escapes to infinity).
std::optional<double> exp_cost_boundary(double sigma);

/// Brownian motion with alternating drift mu*sgn(x) and an even cost:
/// upper boundary y* is the unique positive root of
/// q + (2/s^2) int_0^y e^{2 mu t / s^2} c(t) dt - (e^{2 mu y / s^2} - 1) c(y)/mu;
/// the lower boundary is -y*.
double alternating_drift_boundary(double mu, double sigma, double q,
                                  const ScalarFn& c_even);

/// One-sided (downward control) mean-reverting model c = |x|, drift -mu*x:
/// the boundary is zeta* sigma with zeta* the root of
/// (1/mu)(2 - e^{-mu z^2}) + q_d e^{-mu z^2} = (1 - q_d mu) 2 z sqrt(pi/mu) Phi(sqrt(2 mu) z).
double ou_one_sided_zeta(double mu, double q_d);

/// Mean-reverting two-boundary model (drift alpha - beta x, piecewise-linear
/// cost, beta < min(k1, k2)): boundaries from the normal-cdf closed forms of
/// m(a,b) and int c m', assembled into g(a) and bisected.
std::pair<double, double> ou_two_boundary_reference(double alpha, double beta,
                                                    double sigma, double k1,
                                                    double k2);

/// The normal-cdf closed forms themselves (exposed for tests): speed measure
/// and cost integral of the mean-reverting model over [a, b] with a <= 0 <= b.
double ou_speed_measure(double alpha, double beta, double sigma, double a, double b);
double ou_cost_speed_integral(double alpha, double beta, double sigma,
                              double k1, double k2, double a, double b);

}  // namespace closedform
}  // namespace ergo

#include "ergo/closedform.hpp"

#include <cmath>
#include <sstream>

#include "ergo/errors.hpp"
#include "ergo/rootfind.hpp"
#include "ergo/special.hpp"

namespace ergo::closedform {
namespace {

constexpr double kOracleTol = 1e-10;
constexpr double kOracleQuadTol = 1e-12;

}  // namespace

BmNodriftSolution bm_piecewise_nodrift(double k1, double k2, double sigma) {
  if (!(k1 > 0 && k2 > 0 && sigma > 0))
    throw InputError("bm_piecewise_nodrift: k1, k2, sigma must be positive");
  const double s2 = sigma * sigma;
  const double a = -std::sqrt(2.0 * k2 * s2 / (k1 * (k1 + k2)));
  const double b = std::sqrt(2.0 * k1 * s2 / (k2 * (k1 + k2)));
  return {a, b, k2 * b};
}

std::pair<double, double> bm_symmetric_drift(double mu, double sigma, double k) {
  if (!(mu > 0 && sigma > 0 && k > 0))
    throw InputError("bm_symmetric_drift: mu, sigma, k must be positive");
  const double s2 = sigma * sigma;
  // 1 - e^{-eps} via expm1: the direct form loses the small-mu limit to
  // cancellation.
  const double eps = 4.0 * mu * mu / (k * s2);
  const double a = s2 / (2.0 * mu) * std::log1p(-std::sqrt(-std::expm1(-eps)));
  return {a, -a - 2.0 * mu / k};
}

double bm_piecewise_gfun(double mu, double sigma, double k1, double k2, double a) {
  if (!(mu > 0)) throw InputError("bm_piecewise_gfun: requires mu > 0");
  const double s2 = sigma * sigma;
  return s2 / (2.0 * mu * mu) *
         (k1 + k2 -
          k2 * std::exp(-(2.0 * mu / s2) * ((k1 / k2) * a + 2.0 * mu / k2)) -
          k1 * std::exp(2.0 * mu * a / s2));
}

double symmetric_kappa(double mu) {
  if (!(mu > 0)) throw InputError("symmetric_kappa: requires mu > 0");
  auto F = [mu](double kappa) {
    const double I =
        integrate([mu](double y) { return std::exp(mu * y * y); }, 0.0, kappa,
                  kOracleQuadTol)
            .value;
    return (1.0 + mu) / (2.0 * mu) * (std::exp(mu * kappa * kappa) - 1.0) +
           0.5 - (1.0 + mu) * kappa * I;
  };
  const double lo = 1e-6, hi = 10.0;
  const double flo = F(lo), fhi = F(hi);
  if ((flo > 0) == (fhi > 0))
    throw BracketError("symmetric_kappa: no root in [1e-6, 10]");
  return bracketed_root(F, lo, hi, flo, fhi, kOracleTol).x;
}

double exp_cost_h(double sigma, double b) {
  return 0.5 + (std::exp(-b) * (1.0 + b) - 1.0) / (sigma * sigma);
}

std::optional<double> exp_cost_boundary(double sigma) {
  if (!(sigma > 0)) throw InputError("exp_cost_boundary: sigma must be positive");
  // h(inf) = 1/2 - 1/sigma^2: a root exists iff that limit is negative.
  if (sigma * sigma >= 2.0) return std::nullopt;
  auto h = [sigma](double b) { return exp_cost_h(sigma, b); };
  auto bracket = expand_bracket(h, 0.0, h(0.0), +1, 1.0);
  if (!bracket) return std::nullopt;
  return bracketed_root(h, bracket->lo, bracket->hi, bracket->flo, bracket->fhi,
                        kOracleTol)
      .x;
}

double alternating_drift_boundary(double mu, double sigma, double q,
                                  const ScalarFn& c_even) {
  if (!(mu > 0 && sigma > 0 && q > 0))
    throw InputError("alternating_drift_boundary: mu, sigma, q must be positive");
  const double s2 = sigma * sigma;
  auto G = [&](double y) {
    const double I =
        integrate([&](double t) { return std::exp(2.0 * mu * t / s2) * c_even(t); },
                  0.0, y, kOracleQuadTol, kinks_in(c_even.kinks, 0.0, y))
            .value;
    return q + 2.0 / s2 * I -
           (std::exp(2.0 * mu * y / s2) - 1.0) * c_even(y) / mu;
  };
  auto bracket = expand_bracket(G, 0.0, G(0.0), +1, 0.5);
  if (!bracket)
    throw BracketError("alternating_drift_boundary: no sign change of the boundary equation");
  return bracketed_root(G, bracket->lo, bracket->hi, bracket->flo,
                        bracket->fhi, kOracleTol)
      .x;
}

double ou_one_sided_zeta(double mu, double q_d) {
  if (!(mu > 0) || !(q_d >= 0))
    throw InputError("ou_one_sided_zeta: requires mu > 0 and q_d >= 0");
  auto F = [mu, q_d](double z) {
    const double e = std::exp(-mu * z * z);
    return (2.0 - e) / mu + q_d * e -
           (1.0 - q_d * mu) * 2.0 * z * std::sqrt(M_PI / mu) *
               normal_cdf(std::sqrt(2.0 * mu) * z);
  };
  const double lo = 1e-6, hi = 20.0;
  const double flo = F(lo), fhi = F(hi);
  if ((flo > 0) == (fhi > 0)) {
    std::ostringstream msg;
    msg << "ou_one_sided_zeta: boundary equation has no root in [1e-6, 20] "
           "(q_d * mu = "
        << q_d * mu << "; the q_d*mu >= 1 regime has no interior optimum)";
    throw BracketError(msg.str());
  }
  return bracketed_root(F, lo, hi, flo, fhi, kOracleTol).x;
}

double ou_speed_measure(double alpha, double beta, double sigma, double a,
                        double b) {
  const double s2 = sigma * sigma;
  auto u = [&](double x) {
    return std::sqrt(2.0 * beta) * x / sigma -
           std::sqrt(2.0) * alpha / (std::sqrt(beta) * sigma);
  };
  return 2.0 / sigma * std::sqrt(M_PI / beta) * std::exp(alpha * alpha / (beta * s2)) *
         (normal_cdf(u(b)) - normal_cdf(u(a)));
}

double ou_cost_speed_integral(double alpha, double beta, double sigma,
                              double k1, double k2, double a, double b) {
  if (!(a <= 0.0 && 0.0 <= b))
    throw InputError("ou_cost_speed_integral: closed form needs a <= 0 <= b");
  const double s2 = sigma * sigma;
  const double r = std::sqrt(2.0) * alpha / (std::sqrt(beta) * sigma);
  auto u = [&](double x) { return std::sqrt(2.0 * beta) * x / sigma - r; };
  const double pre = std::exp(alpha * alpha / (s2 * beta)) * std::sqrt(2.0 * M_PI);
  const double up = k2 / beta * pre *
                    (normal_pdf(r) - normal_pdf(u(b)) +
                     r * (normal_cdf(u(b)) - normal_cdf(-r)));
  const double down = k1 / beta * pre *
                      (normal_pdf(u(a)) - normal_pdf(r) +
                       r * (normal_cdf(-r) - normal_cdf(u(a))));
  return up - down;
}

std::pair<double, double> ou_two_boundary_reference(double alpha, double beta,
                                                    double sigma, double k1,
                                                    double k2) {
  if (!(beta > 0 && beta < std::min(k1, k2)))
    throw InputError(
        "ou_two_boundary_reference: requires 0 < beta < min(k1, k2)");
  if (!(alpha > 0 && sigma > 0))
    throw InputError("ou_two_boundary_reference: alpha, sigma must be positive");
  const double s2 = sigma * sigma;
  auto Sprime = [&](double x) {
    return std::exp(-2.0 * alpha * x / s2 + beta * x * x / s2);
  };
  auto cost = [&](double x) { return std::max(-k1 * x, k2 * x); };
  auto b_of_a = [&](double a) {
    return ((beta - k1) * a - 2.0 * alpha) / (k2 - beta);
  };
  auto g = [&](double a) {
    const double ba = b_of_a(a);
    const double pi1b = cost(ba) + alpha - beta * ba;
    return ou_cost_speed_integral(alpha, beta, sigma, k1, k2, a, ba) -
           pi1b * ou_speed_measure(alpha, beta, sigma, a, ba) + 1.0 / Sprime(ba) +
           1.0 / Sprime(a);
  };
  const double ahat = -2.0 * alpha / (k1 - beta);
  auto bracket = expand_bracket(g, ahat, g(ahat), -1, 0.5);
  if (!bracket)
    throw ExistenceError("ou_two_boundary_reference: g has no sign change");
  const double a_star =
      bracketed_root(g, bracket->lo, bracket->hi, bracket->flo, bracket->fhi,
                     kOracleTol)
          .x;
  return {a_star, b_of_a(a_star)};
}

}  // namespace ergo::closedform

#include "ergo/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ergo/errors.hpp"

namespace ergo {
namespace {

// The scale integral sits inside every speed-density evaluation, so it runs
// at a tighter tolerance than the outer quadrature that consumes it.
double inner_tol(const Problem& p) { return std::max(p.quad_tol * 1e-2, 1e-13); }

double sigma_sq(const Problem& p, double x) {
  const double s = p.diffusion.sigma(x);
  const double s2 = s * s;
  if (!(s2 > 0.0)) {
    std::ostringstream msg;
    msg << "sigma^2(" << x << ") = " << s2
        << " violates the nondegeneracy condition sigma^2 > 0";
    throw EvalError(msg.str());
  }
  return s2;
}

double golden_min(const RealFn& f, double lo, double hi, double tol) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

// Locates the argmin inside [lo, hi]: golden section plus the kinks as
// explicit candidates, then a strict-interior check against the endpoints.
double locate_argmin(const ScalarFn& f, Interval br, double tol,
                     const char* name) {
  if (!(br.lo < br.hi)) throw BracketError(std::string(name) + ": empty argmin bracket");
  double best_x = golden_min(f.fn, br.lo, br.hi, tol);
  double best_v = f(best_x);
  for (double k : f.kinks) {
    if (k > br.lo && k < br.hi && f(k) <= best_v) {
      best_v = f(k);
      best_x = k;
    }
  }
  if (!(best_v < f(br.lo) && best_v < f(br.hi))) {
    std::ostringstream msg;
    msg << name << ": no interior minimum in bracket [" << br.lo << ", "
        << br.hi << "] (assumption (i) bracket invalid)";
    throw BracketError(msg.str());
  }
  return best_x;
}

// Sampled-grid unimodality diagnostic for assumption (i): nonincreasing left
// of the argmin, nondecreasing right of it, up to a small relative slack.
void monotonicity_diagnostic(const ScalarFn& f, double xhat, Interval br,
                             const char* name,
                             std::vector<std::string>& warnings) {
  constexpr int kGrid = 1024;
  const double step = (br.hi - br.lo) / kGrid;
  double prev_x = br.lo;
  double prev_v = f(prev_x);
  double scale = std::fabs(prev_v) + 1.0;
  for (int i = 1; i <= kGrid; ++i) {
    const double x = i == kGrid ? br.hi : br.lo + i * step;
    const double v = f(x);
    scale = std::max(scale, std::fabs(v));
    const double slack = 1e-9 * scale;
    const bool left = x <= xhat;
    if ((left && v > prev_v + slack) || (!left && prev_x >= xhat && v < prev_v - slack)) {
      std::ostringstream msg;
      msg << name << " is not unimodal about " << xhat << " on the sampled grid near x = "
          << x << " (assumption (i) diagnostic)";
      warnings.push_back(msg.str());
      return;
    }
    prev_x = x;
    prev_v = v;
  }
}

}  // namespace

void Problem::validate() const {
  if (!(cost.q_u >= 0.0) || !(cost.q_d >= 0.0))
    throw InputError("control prices q_u, q_d must be nonnegative");
  if (!(cost.q_u + cost.q_d > 0.0))
    throw InputError(
        "q_u + q_d must be positive: with both prices zero the optimality "
        "system degenerates (I1(a,a) = (q_u+q_d)/S'(a) is no longer positive)");
  if (!(quad_tol > 0.0) || !(root_tol > 0.0))
    throw InputError("quad_tol and root_tol must be positive");
  if (!std::isfinite(anchor)) throw InputError("anchor must be finite");
}

std::vector<double> kinks_in(const std::vector<double>& all, double lo, double hi) {
  std::vector<double> out;
  for (double k : all) {
    if (k > lo && k < hi) out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double log_scale_density(const Problem& p, double x) {
  if (x == p.anchor) return 0.0;
  const double lo = std::min(p.anchor, x);
  const double hi = std::max(p.anchor, x);
  auto integrand = [&p](double y) {
    return 2.0 * p.diffusion.mu(y) / sigma_sq(p, y);
  };
  const auto r = integrate(integrand, lo, hi, inner_tol(p),
                           kinks_in(p.diffusion.kinks, lo, hi));
  const double signed_integral = x >= p.anchor ? r.value : -r.value;
  return -signed_integral;
}

double scale_density(const Problem& p, double x) {
  return std::exp(log_scale_density(p, x));
}

double speed_density(const Problem& p, double x) {
  return 2.0 / sigma_sq(p, x) * std::exp(-log_scale_density(p, x));
}

double speed_measure(const Problem& p, double a, double b) {
  if (!(a < b)) throw InputError("speed_measure: need a < b");
  auto mprime = [&p](double t) { return speed_density(p, t); };
  return integrate(mprime, a, b, p.quad_tol, kinks_in(p.diffusion.kinks, a, b))
      .value;
}

double cost_speed_integral(const Problem& p, double a, double b) {
  if (a == b) return 0.0;
  auto f = [&p](double t) { return p.cost.c(t) * speed_density(p, t); };
  std::vector<double> kinks = p.diffusion.kinks;
  kinks.insert(kinks.end(), p.cost.c.kinks.begin(), p.cost.c.kinks.end());
  return integrate(f, a, b, p.quad_tol, kinks_in(kinks, a, b)).value;
}

PiPair pi_pair(const Problem& p, Interval bracket1, Interval bracket2) {
  p.validate();
  std::vector<double> pi_kinks = p.cost.c.kinks;
  pi_kinks.insert(pi_kinks.end(), p.diffusion.mu.kinks.begin(),
                  p.diffusion.mu.kinks.end());
  std::sort(pi_kinks.begin(), pi_kinks.end());

  const ScalarFn c = p.cost.c;
  const ScalarFn mu = p.diffusion.mu;
  const double qu = p.cost.q_u, qd = p.cost.q_d;

  PiPair pair;
  pair.pi1 = ScalarFn{[c, mu, qd](double x) { return c(x) + qd * mu(x); },
                      pi_kinks, "pi1 = c + q_d*mu"};
  pair.pi2 = ScalarFn{[c, mu, qu](double x) { return c(x) - qu * mu(x); },
                      pi_kinks, "pi2 = c - q_u*mu"};
  pair.xhat1 = locate_argmin(pair.pi1, bracket1, p.root_tol, "pi1");
  pair.xhat2 = locate_argmin(pair.pi2, bracket2, p.root_tol, "pi2");
  monotonicity_diagnostic(pair.pi1, pair.xhat1, bracket1, "pi1", pair.warnings);
  monotonicity_diagnostic(pair.pi2, pair.xhat2, bracket2, "pi2", pair.warnings);

  // c is assumed minimised at 0; surfaced as a diagnostic only, since the
  // argmins of pi1/pi2 are what the solver actually uses.
  const double c0 = c(0.0);
  if (!(c0 >= 0.0)) {
    pair.warnings.push_back("c(0) < 0 violates the running-cost normalisation");
  }
  return pair;
}

double stationary_density(const Problem& p, double a, double b, double x) {
  if (!(a <= x && x <= b))
    throw InputError("stationary_density: x outside [a, b]");
  return speed_density(p, x) / speed_measure(p, a, b);
}

std::pair<double, double> control_rates(const Problem& p, double a, double b) {
  if (!(a < b)) throw InputError("control_rates: need a < b");
  const double m = speed_measure(p, a, b);
  const double alpha = std::exp(-log_scale_density(p, a)) / m;
  const double beta = std::exp(-log_scale_density(p, b)) / m;
  return {alpha, beta};
}

}  // namespace ergo

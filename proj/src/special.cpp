#include "ergo/special.hpp"

#include <cmath>
#include <limits>

namespace ergo {
namespace {

constexpr double kInvSqrtPi = 0.5641895835477562869480794515608;
constexpr double kInvSqrt2 = 0.7071067811865475244008443621048;
constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599344;

// erf(x) = (2/sqrt(pi)) sum (-1)^n x^(2n+1) / (n! (2n+1)); used for |x| < 1.5
// where the alternating terms stay small enough for full double accuracy.
double erf_series(double x) {
  const double x2 = x * x;
  double term = x;  // (-1)^n x^(2n+1) / n!
  double sum = x;
  for (int n = 1; n < 80; ++n) {
    term *= -x2 / n;
    double contrib = term / (2 * n + 1);
    sum += contrib;
    if (std::fabs(contrib) < 1e-18 * std::fabs(sum)) break;
  }
  return 2.0 * kInvSqrtPi * sum;
}

// Laplace continued fraction (A&S 7.1.14), evaluated by the modified Lentz
// algorithm: sqrt(pi) e^{x^2} erfc(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))).
// Used for x >= 1.5 where it converges in a few dozen iterations.
double erfc_cfrac(double x) {
  const double tiny = 1e-300;
  double f = x;
  double C = f;
  double D = 0.0;
  for (int n = 1; n < 300; ++n) {
    const double a = 0.5 * n;
    D = x + a * D;
    if (std::fabs(D) < tiny) D = tiny;
    C = x + a / C;
    if (std::fabs(C) < tiny) C = tiny;
    D = 1.0 / D;
    const double delta = C * D;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-17) break;
  }
  return kInvSqrtPi * std::exp(-x * x) / f;
}

}  // namespace

double erf(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::fabs(x);
  if (ax < 1.5) return erf_series(x);
  const double tail = erfc_cfrac(ax);
  return x > 0 ? 1.0 - tail : tail - 1.0;
}

double erfc(double x) {
  if (std::isnan(x)) return x;
  if (x >= 1.5) return erfc_cfrac(x);
  if (x <= -1.5) return 2.0 - erfc_cfrac(-x);
  return 1.0 - erf_series(x);
}

double normal_cdf(double x) { return 0.5 * erfc(-x * kInvSqrt2); }

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

}  // namespace ergo

#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "ergo/errors.hpp"

namespace ergo {

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

struct SignBracket {
  double lo, hi;
  double flo, fhi;
};

/// Bracketing-only root solve: Illinois-damped regula falsi with a forced
/// bisection every fourth step so the bracket width always contracts.
/// Integrand-driven objectives here have kinks, so derivative-based schemes
/// are deliberately avoided. Requires f(lo), f(hi) of opposite sign; stops
/// when the bracket is narrower than xtol (absolute, state units).
template <class F>
RootResult bracketed_root(F&& f, double lo, double hi, double flo, double fhi,
                          double xtol, int max_iter = 256) {
  if (lo > hi) {
    std::swap(lo, hi);
    std::swap(flo, fhi);
  }
  if (flo == 0.0) return {lo, 0.0, 0};
  if (fhi == 0.0) return {hi, 0.0, 0};
  if ((flo > 0.0) == (fhi > 0.0))
    throw BracketError("bracketed_root: endpoints do not bracket a sign change");

  int last_side = 0;
  int it = 0;
  while (hi - lo > xtol && it < max_iter) {
    ++it;
    double cand;
    if (it % 4 == 0 || fhi == flo) {
      cand = 0.5 * (lo + hi);
    } else {
      cand = (flo * hi - fhi * lo) / (flo - fhi);
      const double margin = 0.01 * (hi - lo);
      if (!(cand > lo + margin && cand < hi - margin)) cand = 0.5 * (lo + hi);
    }
    const double fc = f(cand);
    if (fc == 0.0) return {cand, 0.0, it};
    if ((fc > 0.0) == (fhi > 0.0)) {
      hi = cand;
      fhi = fc;
      if (last_side == +1) flo *= 0.5;  // Illinois damping of the stale end
      last_side = +1;
    } else {
      lo = cand;
      flo = fc;
      if (last_side == -1) fhi *= 0.5;
      last_side = -1;
    }
  }
  const double x = std::fabs(flo) <= std::fabs(fhi) ? lo : hi;
  return {x, std::fabs(flo) <= std::fabs(fhi) ? flo : fhi, it};
}

/// Expands a bracket geometrically from x0 in the given direction (+1 or -1),
/// probing x0 + dir*step, x0 + dir*2*step, ... until f changes sign against
/// f0. Returns the sign-change bracket, or nullopt once max_doublings probes
/// fail (callers translate that into the appropriate limiting-assumption
/// diagnostic).
template <class F>
std::optional<SignBracket> expand_bracket(F&& f, double x0, double f0,
                                          int direction, double step,
                                          int max_doublings = 60) {
  if (f0 == 0.0) return SignBracket{x0, x0, 0.0, 0.0};
  double prev_x = x0, prev_f = f0;
  for (int k = 0; k < max_doublings; ++k) {
    const double x = x0 + direction * step;
    const double fx = f(x);
    if (fx == 0.0 || (fx > 0.0) != (f0 > 0.0)) {
      if (direction > 0) return SignBracket{prev_x, x, prev_f, fx};
      return SignBracket{x, prev_x, fx, prev_f};
    }
    prev_x = x;
    prev_f = fx;
    step *= 2.0;
  }
  return std::nullopt;
}

}  // namespace ergo

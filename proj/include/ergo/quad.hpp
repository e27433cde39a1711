#pragma once

#include <functional>
#include <span>

namespace ergo {

using RealFn = std::function<double(double)>;

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  int subdivisions = 0;
};

inline constexpr int kQuadPanelBudget = 10000;
inline constexpr int kTailMaxDoublings = 60;

/// Adaptive Gauss-Kronrod (7/15 nested pair) integration of f over [a, b].
/// The interval is pre-split at each kink in (a, b), then the panel with the
/// largest error estimate is bisected until the total estimate satisfies
///   err <= tol * max(|value|, L1)
/// where L1 is the sum of |panel value| over panels. For integrands without
/// internal cancellation L1 equals |value|, so err_estimate <= tol * (|value|
/// + 1e-300) on success; the L1 form keeps strongly cancelling integrands
/// (first-order-condition residuals near their roots) solvable, where a pure
/// relative target is unreachable. a == b returns zero. Throws QuadError when
/// the panel budget (default 1e4) is exhausted.
QuadResult integrate(const RealFn& f, double a, double b, double tol,
                     std::span<const double> kinks = {},
                     int panel_budget = kQuadPanelBudget);

enum class TailDirection { down, up };

/// Integral of f over (-inf, from] (down) or [from, +inf) (up), by summing
/// adaptive panels over geometrically expanding intervals [from - 2^k,
/// from - 2^(k-1)], ... . Stops once a panel contributes less than
/// tol * (accumulated L1) twice in a row; one small panel can alias a sign
/// change of the integrand, two cannot. Throws TailError after 60 doublings
/// without convergence (the tail is not decaying; a (D1)/(U1)-type failure).
QuadResult integrate_semi_infinite(const RealFn& f, double from,
                                   TailDirection direction, double tol,
                                   std::span<const double> kinks = {});

}  // namespace ergo

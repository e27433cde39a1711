#include "ergo/quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "ergo/errors.hpp"

namespace ergo {
namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule
// (the classic QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double lo, hi;
  double value;
  double err;
  double abs_value;  // |value|, kept for the L1 accumulator
};

Panel eval_panel(const RealFn& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  double fv1[7], fv2[7];
  const double fc = f(center);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  double resabs = kWgk[7] * std::fabs(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    const double fsum = fv1[j] + fv2[j];
    resk += kWgk[j] * fsum;
    resabs += kWgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
    if (j % 2 == 1) resg += kWg[(j - 1) / 2] * fsum;
  }

  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
  }

  double err = std::fabs((resk - resg) * half);
  resasc *= half;
  resabs *= half;
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(err, 50.0 * eps * resabs);
  }
  return Panel{lo, hi, resk * half, err, std::fabs(resk * half)};
}

bool tolerance_met(double total, double l1, double err, double tol) {
  return err <= tol * (std::fabs(total) + 1e-300) || err <= tol * l1;
}

}  // namespace

QuadResult integrate(const RealFn& f, double a, double b, double tol,
                     std::span<const double> kinks, int panel_budget) {
  if (!(tol > 0)) throw InputError("integrate: tolerance must be positive");
  if (a == b) return {0.0, 0.0, 0};
  if (!(a < b)) throw InputError("integrate: lower limit exceeds upper limit");
  if (!std::isfinite(a) || !std::isfinite(b))
    throw InputError("integrate: limits must be finite");

  std::vector<double> cuts{a};
  std::vector<double> sorted(kinks.begin(), kinks.end());
  std::sort(sorted.begin(), sorted.end());
  for (double k : sorted) {
    if (k > a && k < b && k - cuts.back() > 1e-14 * (std::fabs(k) + 1.0)) {
      cuts.push_back(k);
    }
  }
  cuts.push_back(b);

  auto cmp = [](const Panel& p, const Panel& q) { return p.err < q.err; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);
  std::vector<Panel> frozen;  // panels too narrow to split further

  double total = 0.0, total_err = 0.0, l1 = 0.0;
  int count = 0;
  auto push = [&](Panel p) {
    total += p.value;
    total_err += p.err;
    l1 += p.abs_value;
    heap.push(p);
    ++count;
  };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    push(eval_panel(f, cuts[i], cuts[i + 1]));
  }

  while (!tolerance_met(total, l1, total_err, tol)) {
    if (count >= panel_budget || heap.empty()) {
      std::ostringstream msg;
      msg << "integrate: tolerance " << tol << " unreachable within "
          << panel_budget << " panels (value ~ " << total << ", err ~ "
          << total_err << ")";
      throw QuadError(msg.str());
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      frozen.push_back(worst);  // width at rounding limit; keep its estimate
      continue;
    }
    total -= worst.value;
    total_err -= worst.err;
    l1 -= worst.abs_value;
    --count;
    push(eval_panel(f, worst.lo, mid));
    push(eval_panel(f, mid, worst.hi));
  }
  return {total, total_err, count};
}

QuadResult integrate_semi_infinite(const RealFn& f, double from,
                                   TailDirection direction, double tol,
                                   std::span<const double> kinks) {
  const double sign = direction == TailDirection::down ? -1.0 : 1.0;
  double acc = 0.0, acc_err = 0.0, l1 = 0.0;
  int subdivisions = 0;
  int negligible_run = 0;
  double inner = 0.0;  // panel offsets [inner, outer] from `from`
  double outer = 1.0;
  for (int k = 0; k <= kTailMaxDoublings; ++k) {
    const double lo = direction == TailDirection::down ? from + sign * outer
                                                       : from + inner;
    const double hi = direction == TailDirection::down ? from - inner
                                                       : from + outer;
    std::vector<double> local;
    for (double kk : kinks) {
      if (kk > lo && kk < hi) local.push_back(kk);
    }
    QuadResult panel = integrate(f, lo, hi, tol, local);
    acc += panel.value;
    acc_err += panel.err_estimate;
    l1 += std::fabs(panel.value);
    subdivisions += std::max(panel.subdivisions, 1);
    if (std::fabs(panel.value) <= tol * (l1 + 1e-300)) {
      if (++negligible_run >= 2) {
        return {acc, acc_err + std::fabs(panel.value), subdivisions};
      }
    } else {
      negligible_run = 0;
    }
    inner = outer;
    outer *= 2.0;
  }
  std::ostringstream msg;
  msg << "integrate_semi_infinite: tail not decaying after "
      << kTailMaxDoublings << " doublings (accumulated " << acc
      << "); integrability condition (D1)/(U1) likely violated";
  throw TailError(msg.str());
}

}  // namespace ergo

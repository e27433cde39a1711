#include "ergo/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ergo/errors.hpp"
#include "ergo/parallel.hpp"
#include "ergo/rng.hpp"

namespace ergo {

double NormalSampler::next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = rng_.uniform_open();
  const double u2 = rng_.uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  cached_ = r * std::sin(theta);
  has_cached_ = true;
  return r * std::cos(theta);
}

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw InputError("sim: dt must be positive");
  if (!(horizon > 10.0 * dt)) throw InputError("sim: horizon must be >> dt");
  if (!(effective_burn_in() < horizon))
    throw InputError("sim: burn_in must be smaller than horizon");
  if (replicates < 1) throw InputError("sim: replicates must be >= 1");
  if (bins < 1) throw InputError("sim: bins must be >= 1");
}

namespace {

struct ReplicateStats {
  double lambda = 0.0;
  double up_rate = 0.0;
  double down_rate = 0.0;
  double min_state = 0.0;
  double max_state = 0.0;
  std::vector<std::uint64_t> counts;
};

struct PathSpec {
  double clamp_lo = -std::numeric_limits<double>::infinity();
  double clamp_hi = std::numeric_limits<double>::infinity();
  double hist_lo = 0.0;
  double hist_hi = 0.0;
  double guard_lo = -std::numeric_limits<double>::infinity();
  double guard_hi = std::numeric_limits<double>::infinity();
};

ReplicateStats run_replicate(const Problem& p, const PathSpec& spec,
                             const SimConfig& cfg, std::uint64_t stream_seed) {
  const auto& mu = p.diffusion.mu;
  const auto& sigma = p.diffusion.sigma;
  const auto& c = p.cost.c;
  const double dt = cfg.dt;
  const double sqdt = std::sqrt(dt);
  const std::int64_t steps = static_cast<std::int64_t>(cfg.horizon / dt);
  const std::int64_t burn_steps =
      static_cast<std::int64_t>(cfg.effective_burn_in() / dt);

  NormalSampler normals(stream_seed);
  ReplicateStats out;
  out.counts.assign(static_cast<std::size_t>(cfg.bins), 0);
  const double bin_width = (spec.hist_hi - spec.hist_lo) / cfg.bins;

  double x = cfg.x0;
  out.min_state = x;
  out.max_state = x;
  double up = 0.0, down = 0.0, cost_acc = 0.0;
  for (std::int64_t i = 0; i < steps; ++i) {
    const double xi = normals.next();
    const double proposal = x + mu(x) * dt + sigma(x) * sqdt * xi;
    const double du = std::max(spec.clamp_lo - proposal, 0.0);
    const double dd = std::max(proposal - spec.clamp_hi, 0.0);
    x = std::clamp(proposal, spec.clamp_lo, spec.clamp_hi);
    out.min_state = std::min(out.min_state, x);
    out.max_state = std::max(out.max_state, x);
    if (x < spec.guard_lo || x > spec.guard_hi) {
      std::ostringstream msg;
      msg << "simulate: path reached " << x
          << ", beyond the guard band; the uncontrolled tail looks "
             "attainable (probable (D)/(U) condition violation)";
      throw TailError(msg.str());
    }
    if (i >= burn_steps) {
      up += du;
      down += dd;
      cost_acc += c(x) * dt;
      int bin = static_cast<int>((x - spec.hist_lo) / bin_width);
      bin = std::clamp(bin, 0, cfg.bins - 1);
      ++out.counts[static_cast<std::size_t>(bin)];
    }
  }
  const double effective_T = (steps - burn_steps) * dt;
  out.lambda = (cost_acc + p.cost.q_u * up + p.cost.q_d * down) / effective_T;
  out.up_rate = up / effective_T;
  out.down_rate = down / effective_T;
  return out;
}

SimEstimate reduce(const std::vector<ReplicateStats>& reps, const PathSpec& spec,
                   const SimConfig& cfg) {
  SimEstimate est;
  est.replicates = cfg.replicates;
  const int R = cfg.replicates;
  double lam = 0.0, al = 0.0, be = 0.0;
  for (const auto& r : reps) {
    lam += r.lambda;
    al += r.up_rate;
    be += r.down_rate;
    est.lambda_by_replicate.push_back(r.lambda);
  }
  est.lambda_hat = lam / R;
  est.alpha_hat = al / R;
  est.beta_hat = be / R;
  est.min_state = reps.front().min_state;
  est.max_state = reps.front().max_state;
  for (const auto& r : reps) {
    est.min_state = std::min(est.min_state, r.min_state);
    est.max_state = std::max(est.max_state, r.max_state);
  }
  if (R >= 2) {
    double sl = 0.0, sa = 0.0, sb = 0.0;
    for (const auto& r : reps) {
      sl += (r.lambda - est.lambda_hat) * (r.lambda - est.lambda_hat);
      sa += (r.up_rate - est.alpha_hat) * (r.up_rate - est.alpha_hat);
      sb += (r.down_rate - est.beta_hat) * (r.down_rate - est.beta_hat);
    }
    const double norm = 1.0 / (R - 1.0);
    est.lambda_se = std::sqrt(sl * norm / R);
    est.alpha_se = std::sqrt(sa * norm / R);
    est.beta_se = std::sqrt(sb * norm / R);
  }

  est.bin_edges.resize(static_cast<std::size_t>(cfg.bins) + 1);
  for (int i = 0; i <= cfg.bins; ++i) {
    est.bin_edges[static_cast<std::size_t>(i)] =
        spec.hist_lo + (spec.hist_hi - spec.hist_lo) * i / cfg.bins;
  }
  std::uint64_t total = 0;
  std::vector<std::uint64_t> pooled(static_cast<std::size_t>(cfg.bins), 0);
  for (const auto& r : reps) {
    for (std::size_t i = 0; i < pooled.size(); ++i) pooled[i] += r.counts[i];
  }
  for (auto cnt : pooled) total += cnt;
  est.bin_mass.resize(pooled.size());
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    est.bin_mass[i] = static_cast<double>(pooled[i]) / static_cast<double>(total);
  }
  return est;
}

SimEstimate run_all(const Problem& p, const PathSpec& spec, const SimConfig& cfg) {
  std::vector<ReplicateStats> reps(static_cast<std::size_t>(cfg.replicates));
  parallel_for(static_cast<std::size_t>(cfg.replicates), [&](std::size_t r) {
    reps[r] = run_replicate(p, spec, cfg,
                            SplitMix64::derive_stream(cfg.base_seed, r));
  });
  return reduce(reps, spec, cfg);
}

}  // namespace

SimEstimate simulate_reflected(const Problem& p, double a, double b,
                               const SimConfig& cfg) {
  cfg.validate();
  if (!(a < b)) throw InputError("simulate_reflected: need a < b");
  if (!(a <= cfg.x0 && cfg.x0 <= b))
    throw InputError("simulate_reflected: x0 outside [a, b]");
  PathSpec spec;
  spec.clamp_lo = a;
  spec.clamp_hi = b;
  spec.hist_lo = a;
  spec.hist_hi = b;
  return run_all(p, spec, cfg);
}

SimEstimate simulate_one_sided(const Problem& p, double boundary,
                               ControlSide side, const SimConfig& cfg) {
  cfg.validate();
  PathSpec spec;
  const double scale = std::max(std::fabs(p.diffusion.sigma(boundary)), 1e-6);
  if (side == ControlSide::down_control) {
    if (!(cfg.x0 <= boundary))
      throw InputError("simulate_one_sided: x0 must be on the kept side");
    spec.clamp_hi = boundary;
    spec.guard_lo = boundary - 1e4;
    spec.hist_lo = boundary - 10.0 * scale;
    spec.hist_hi = boundary;
  } else {
    if (!(cfg.x0 >= boundary))
      throw InputError("simulate_one_sided: x0 must be on the kept side");
    spec.clamp_lo = boundary;
    spec.guard_hi = boundary + 1e4;
    spec.hist_lo = boundary;
    spec.hist_hi = boundary + 10.0 * scale;
  }
  return run_all(p, spec, cfg);
}

double occupation_vs_stationary(const SimEstimate& est, const Problem& p,
                                double a, double b) {
  const double m = speed_measure(p, a, b);
  double sup = 0.0;
  for (std::size_t i = 0; i + 1 < est.bin_edges.size(); ++i) {
    const double lo = std::max(est.bin_edges[i], a);
    const double hi = std::min(est.bin_edges[i + 1], b);
    double target = 0.0;
    if (lo < hi) {
      auto mp = [&](double t) { return speed_density(p, t); };
      target = integrate(mp, lo, hi, p.quad_tol,
                         kinks_in(p.diffusion.kinks, lo, hi))
                   .value /
               m;
    }
    sup = std::max(sup, std::fabs(est.bin_mass[i] - target));
  }
  return sup;
}

}  // namespace ergo

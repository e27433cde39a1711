#pragma once

#include <cstdint>
#include <vector>

#include "ergo/model.hpp"
#include "ergo/solver.hpp"

namespace ergo {

struct SimConfig {
  double dt = 1e-3;
  double horizon = 2000.0;   // total simulated time per replicate
  double burn_in = -1.0;     // time discarded; < 0 means 5% of horizon
  int replicates = 16;
  std::uint64_t base_seed = 20240601;
  double x0 = 0.0;
  int bins = 32;

  double effective_burn_in() const {
    return burn_in >= 0.0 ? burn_in : 0.05 * horizon;
  }
  void validate() const;
};

struct SimEstimate {
  double lambda_hat = 0.0;
  double lambda_se = 0.0;
  double alpha_hat = 0.0;  // long-run rate U_T / T of the upward control
  double alpha_se = 0.0;
  double beta_hat = 0.0;   // D_T / T
  double beta_se = 0.0;
  std::vector<double> bin_edges;  // bins + 1 edges
  std::vector<double> bin_mass;   // sums to 1
  std::vector<double> lambda_by_replicate;
  double min_state = 0.0;  // extremes of the post-clamp path, all replicates
  double max_state = 0.0;
  int replicates = 0;
};

/// Euler scheme for the reflected diffusion on [a, b]: propose
/// x~ = x + mu(x) dt + sigma(x) sqrt(dt) xi, record the overshoot
/// max(a - x~, 0) / max(x~ - b, 0) as the local-time increment (the Skorokhod
/// pushing term at first order), clamp, and accumulate c(x) dt after the
/// burn-in. Replicates run on independent SplitMix64 streams keyed by
/// (base_seed, replicate) and are reduced in replicate order, so results are
/// bit-identical for any thread schedule.
SimEstimate simulate_reflected(const Problem& p, double a, double b,
                               const SimConfig& cfg);

/// One-sided variant: clamps at `boundary` only (down control clamps from
/// above, up control from below). A path wandering 1e4 state units past the
/// boundary aborts with TailError: the uncontrolled tail is attainable and
/// the (D)/(U) conditions are probably violated. The occupation histogram
/// spans 10 * sigma(boundary) on the free side.
SimEstimate simulate_one_sided(const Problem& p, double boundary,
                               ControlSide side, const SimConfig& cfg);

/// Sup over bins of |empirical mass - integral of the stationary density
/// m'/m(a,b) over the bin|: the simulation-vs-theory consistency statistic.
double occupation_vs_stationary(const SimEstimate& est, const Problem& p,
                                double a, double b);

}  // namespace ergo

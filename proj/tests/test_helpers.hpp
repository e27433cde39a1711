#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ergo/catalog.hpp"
#include "ergo/model.hpp"

namespace ergo::testing {

inline Problem make_catalog(const std::string& id,
                            const std::map<std::string, double>& params) {
  return catalog_problem(catalog_validate(id, params));
}

/// One representative instance per worked model, the "catalog" that identity
/// suites quantify over.
inline std::vector<std::pair<std::string, Problem>> catalog_instances() {
  std::vector<std::pair<std::string, Problem>> out;
  out.emplace_back("bm_piecewise(mu=0.1)",
                   make_catalog("bm_piecewise",
                                {{"mu", 0.1}, {"sigma", 1.0}, {"k1", 0.5}, {"k2", 1.0}}));
  out.emplace_back("bm_piecewise(driftless)",
                   make_catalog("bm_piecewise",
                                {{"mu", 0.0}, {"sigma", 1.0}, {"k1", 0.5}, {"k2", 1.0}}));
  out.emplace_back("bm_symmetric",
                   make_catalog("bm_symmetric", {{"mu", 0.1}, {"sigma", 1.0}, {"k", 1.0}}));
  out.emplace_back("ou_linear_cost",
                   make_catalog("ou_linear_cost", {{"alpha", 0.1},
                                                   {"beta", 0.1},
                                                   {"sigma", 0.5},
                                                   {"k1", 0.5},
                                                   {"k2", 1.0}}));
  out.emplace_back("symmetric_linear_drift",
                   make_catalog("symmetric_linear_drift", {{"mu", 0.05}, {"sigma", 1.0}}));
  out.emplace_back("exp_cost_driftless",
                   make_catalog("exp_cost_driftless", {{"sigma", 1.0}}));
  out.emplace_back("alternating_drift",
                   make_catalog("alternating_drift", {{"mu", 0.1}, {"sigma", 1.0}, {"q", 1.0}}));
  out.emplace_back("ou_one_sided",
                   make_catalog("ou_one_sided", {{"mu", 1.0}, {"sigma", 1.0}, {"q_d", 0.1}}));
  return out;
}

inline Interval default_bracket() { return {-50.0, 50.0}; }

}  // namespace ergo::testing

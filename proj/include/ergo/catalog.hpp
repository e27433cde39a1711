#pragma once

#include <map>
#include <string>
#include <vector>

#include "ergo/model.hpp"

namespace ergo {

/// A named worked model with its parameters. Ids: bm_piecewise,
/// bm_symmetric, ou_linear_cost, symmetric_linear_drift, exp_cost_driftless,
/// alternating_drift, ou_one_sided.
struct CatalogModel {
  std::string id;
  std::map<std::string, double> params;

  double at(const std::string& name) const;
};

struct CatalogParam {
  std::string name;
  bool required = false;
  double default_value = 0.0;
};

struct CatalogEntry {
  std::string id;
  std::string summary;
  std::vector<CatalogParam> params;
};

/// Schema of every catalog model (for `catalog list` and validation).
const std::vector<CatalogEntry>& catalog_entries();

/// Fills defaults, rejects unknown/missing parameters and violated
/// parameter constraints (e.g. the mean-reverting model requires
/// beta < min(k1, k2); exponential cost accepts any sigma here, existence is
/// the solver's verdict).
CatalogModel catalog_validate(const std::string& id,
                              const std::map<std::string, double>& params);

/// Builds the generic Problem (exact drift/volatility/cost functions with
/// declared kinks) for a validated catalog model.
Problem catalog_problem(const CatalogModel& model);

}  // namespace ergo

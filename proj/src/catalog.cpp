#include "ergo/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ergo/errors.hpp"

namespace ergo {
namespace {

ScalarFn constant(double v, const std::string& label) {
  return {[v](double) { return v; }, {}, label};
}

ScalarFn piecewise_linear_cost(double k1, double k2) {
  return {[k1, k2](double x) { return std::max(-k1 * x, k2 * x); },
          {0.0},
          "max(-k1*x, k2*x)"};
}

ScalarFn abs_cost(double k) {
  return {[k](double x) { return k * std::fabs(x); }, {0.0}, "k*abs(x)"};
}

const std::vector<CatalogEntry> kEntries = {
    {"bm_piecewise",
     "Brownian motion, piecewise-linear cost max(-k1 x, k2 x)",
     {{"mu", false, 0.0},
      {"sigma", false, 1.0},
      {"k1", true, 0.0},
      {"k2", true, 0.0},
      {"q_u", false, 1.0},
      {"q_d", false, 1.0}}},
    {"bm_symmetric",
     "Brownian motion with drift, symmetric cost k|x|",
     {{"mu", true, 0.0},
      {"sigma", false, 1.0},
      {"k", false, 1.0},
      {"q_u", false, 1.0},
      {"q_d", false, 1.0}}},
    {"ou_linear_cost",
     "mean-reverting drift alpha - beta x, cost max(-k1 x, k2 x), beta < min(k1,k2)",
     {{"alpha", false, 0.1},
      {"beta", false, 0.1},
      {"sigma", false, 0.5},
      {"k1", false, 0.5},
      {"k2", false, 1.0},
      {"q_u", false, 1.0},
      {"q_d", false, 1.0}}},
    {"symmetric_linear_drift",
     "destabilising drift mu x, cost |x|; boundaries are +-kappa* sigma",
     {{"mu", true, 0.0},
      {"sigma", false, 1.0},
      {"q_u", false, 1.0},
      {"q_d", false, 1.0}}},
    {"exp_cost_driftless",
     "driftless, cost max(1-e^x, 1-e^-x); solvable only for sigma < sqrt(2)",
     {{"sigma", true, 0.0}, {"q_u", false, 1.0}, {"q_d", false, 1.0}}},
    {"alternating_drift",
     "drift mu sgn(x), even cost |x|, equal prices q",
     {{"mu", true, 0.0}, {"sigma", false, 1.0}, {"q", false, 1.0}}},
    {"ou_one_sided",
     "mean-reverting drift -mu x, cost |x|, downward control priced q_d",
     {{"mu", true, 0.0},
      {"sigma", false, 1.0},
      {"q_d", false, 0.1},
      {"q_u", false, 0.0}}},
};

}  // namespace

double CatalogModel::at(const std::string& name) const {
  auto it = params.find(name);
  if (it == params.end())
    throw InputError("catalog model '" + id + "' lacks parameter '" + name + "'");
  return it->second;
}

const std::vector<CatalogEntry>& catalog_entries() { return kEntries; }

CatalogModel catalog_validate(const std::string& id,
                              const std::map<std::string, double>& params) {
  const CatalogEntry* entry = nullptr;
  for (const auto& e : kEntries) {
    if (e.id == id) {
      entry = &e;
      break;
    }
  }
  if (!entry) {
    std::ostringstream msg;
    msg << "unknown catalog id '" << id << "'; known ids:";
    for (const auto& e : kEntries) msg << ' ' << e.id;
    throw InputError(msg.str());
  }

  CatalogModel model{id, {}};
  for (const auto& spec : entry->params) {
    auto it = params.find(spec.name);
    if (it != params.end()) {
      model.params[spec.name] = it->second;
    } else if (spec.required) {
      throw InputError("catalog '" + id + "' requires parameter '" + spec.name + "'");
    } else {
      model.params[spec.name] = spec.default_value;
    }
  }
  for (const auto& [name, _] : params) {
    if (!model.params.count(name))
      throw InputError("catalog '" + id + "' does not take parameter '" + name + "'");
  }

  auto positive = [&](const char* name) {
    if (!(model.at(name) > 0.0))
      throw InputError("catalog '" + id + "': parameter '" + std::string(name) +
                       "' must be positive");
  };
  if (id == "bm_piecewise") {
    positive("k1");
    positive("k2");
    positive("sigma");
  } else if (id == "bm_symmetric") {
    positive("mu");
    positive("sigma");
    positive("k");
  } else if (id == "ou_linear_cost") {
    positive("alpha");
    positive("beta");
    positive("sigma");
    positive("k1");
    positive("k2");
    if (!(model.at("beta") < std::min(model.at("k1"), model.at("k2"))))
      throw InputError(
          "catalog 'ou_linear_cost' requires beta < min(k1, k2) for the "
          "drift-adjusted costs to stay unimodal");
  } else if (id == "symmetric_linear_drift") {
    positive("mu");
    positive("sigma");
  } else if (id == "exp_cost_driftless") {
    positive("sigma");
  } else if (id == "alternating_drift") {
    positive("mu");
    positive("sigma");
    positive("q");
  } else if (id == "ou_one_sided") {
    positive("mu");
    positive("sigma");
  }
  return model;
}

Problem catalog_problem(const CatalogModel& model) {
  Problem p;
  const auto& id = model.id;
  if (id == "bm_piecewise") {
    p.diffusion.mu = constant(model.at("mu"), "mu");
    p.diffusion.sigma = constant(model.at("sigma"), "sigma");
    p.cost.c = piecewise_linear_cost(model.at("k1"), model.at("k2"));
    p.cost.q_u = model.at("q_u");
    p.cost.q_d = model.at("q_d");
  } else if (id == "bm_symmetric") {
    p.diffusion.mu = constant(model.at("mu"), "mu");
    p.diffusion.sigma = constant(model.at("sigma"), "sigma");
    p.cost.c = abs_cost(model.at("k"));
    p.cost.q_u = model.at("q_u");
    p.cost.q_d = model.at("q_d");
  } else if (id == "ou_linear_cost") {
    const double alpha = model.at("alpha"), beta = model.at("beta");
    p.diffusion.mu = {[alpha, beta](double x) { return alpha - beta * x; },
                      {},
                      "alpha - beta*x"};
    p.diffusion.sigma = constant(model.at("sigma"), "sigma");
    p.cost.c = piecewise_linear_cost(model.at("k1"), model.at("k2"));
    p.cost.q_u = model.at("q_u");
    p.cost.q_d = model.at("q_d");
  } else if (id == "symmetric_linear_drift") {
    const double mu = model.at("mu");
    p.diffusion.mu = {[mu](double x) { return mu * x; }, {}, "mu*x"};
    p.diffusion.sigma = constant(model.at("sigma"), "sigma");
    p.cost.c = abs_cost(1.0);
    p.cost.q_u = model.at("q_u");
    p.cost.q_d = model.at("q_d");
  } else if (id == "exp_cost_driftless") {
    p.diffusion.mu = constant(0.0, "0");
    p.diffusion.sigma = constant(model.at("sigma"), "sigma");
    p.cost.c = {[](double x) { return std::max(1.0 - std::exp(x), 1.0 - std::exp(-x)); },
                {0.0},
                "max(1-e^x, 1-e^-x)"};
    p.cost.q_u = model.at("q_u");
    p.cost.q_d = model.at("q_d");
  } else if (id == "alternating_drift") {
    const double mu = model.at("mu");
    p.diffusion.mu = {[mu](double x) { return x > 0 ? mu : (x < 0 ? -mu : 0.0); },
                      {0.0},
                      "mu*sgn(x)"};
    p.diffusion.sigma = constant(model.at("sigma"), "sigma");
    p.cost.c = abs_cost(1.0);
    p.cost.q_u = model.at("q");
    p.cost.q_d = model.at("q");
  } else if (id == "ou_one_sided") {
    const double mu = model.at("mu");
    p.diffusion.mu = {[mu](double x) { return -mu * x; }, {}, "-mu*x"};
    p.diffusion.sigma = constant(model.at("sigma"), "sigma");
    p.cost.c = abs_cost(1.0);
    p.cost.q_u = model.at("q_u");
    p.cost.q_d = model.at("q_d");
  } else {
    throw InputError("catalog_problem: unknown id '" + id + "'");
  }

  p.diffusion.kinks = p.diffusion.mu.kinks;
  p.diffusion.kinks.insert(p.diffusion.kinks.end(),
                           p.diffusion.sigma.kinks.begin(),
                           p.diffusion.sigma.kinks.end());
  std::sort(p.diffusion.kinks.begin(), p.diffusion.kinks.end());
  p.validate();
  return p;
}

}  // namespace ergo

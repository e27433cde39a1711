#include "ergo/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ergo/errors.hpp"
#include "ergo/expr.hpp"

namespace ergo {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end)
    throw InputError("config: key '" + key + "' expects a number, got '" + s + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw InputError("config: key '" + key + "' expects an unsigned integer");
  return v;
}

int parse_int(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw InputError("config: key '" + key + "' expects an integer");
  return v;
}

// `values = v1, v2, ...` or `grid = lo:hi:step` (inclusive of hi up to a
// half-step of rounding slack).
std::vector<double> parse_values(const std::string& raw, const std::string& key) {
  std::vector<double> out;
  std::string s = trim(raw);
  if (key == "grid") {
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw InputError("config: grid expects lo:hi:step");
    const double lo = parse_number(s.substr(0, c1), key);
    const double hi = parse_number(s.substr(c1 + 1, c2 - c1 - 1), key);
    const double step = parse_number(s.substr(c2 + 1), key);
    if (!(step > 0) || hi < lo) throw InputError("config: bad grid bounds");
    for (double v = lo; v <= hi + 0.5 * step; v += step) out.push_back(v);
    return out;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, key));
  if (out.empty()) throw InputError("config: empty value list for '" + key + "'");
  return out;
}

}  // namespace

std::string format_sig(double v, int digits) {
  char buf[48];
  const int n = std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::string(buf, buf + n);
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  // [problem] keys are resolved after the whole file is read: whether
  // `sigma`, `q_u`, ... are expression strings or catalog parameters depends
  // on the presence of a `catalog` key, wherever it appears.
  std::vector<std::pair<std::string, std::string>> problem_raw;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw InputError("config line " + std::to_string(lineno) + ": bad section header");
      section = line.substr(1, line.size() - 2);
      if (section != "problem" && section != "solver" && section != "sim" &&
          section != "sweep")
        throw InputError("config: unknown section [" + section + "]");
      if (section == "sim") cfg.sim.present = true;
      if (section == "sweep") cfg.sweep.present = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw InputError("config line " + std::to_string(lineno) + ": empty key or value");

    if (section == "problem") {
      problem_raw.emplace_back(key, value);
    } else if (section == "solver") {
      auto& sv = cfg.solver;
      if (key == "quad_tol") sv.quad_tol = parse_number(value, key);
      else if (key == "root_tol") sv.root_tol = parse_number(value, key);
      else if (key == "foc_tol") sv.foc_tol = parse_number(value, key);
      else if (key == "mode") sv.mode = value;
      else if (key == "fixed_a") sv.fixed_a = parse_number(value, key);
      else if (key == "fixed_b") sv.fixed_b = parse_number(value, key);
      else if (key == "grid_n") sv.grid_n = parse_int(value, key);
      else throw InputError("config: unknown [solver] key '" + key + "'");
    } else if (section == "sim") {
      auto& sm = cfg.sim;
      if (key == "dt") sm.dt = parse_number(value, key);
      else if (key == "horizon") sm.horizon = parse_number(value, key);
      else if (key == "burn_in") sm.burn_in = parse_number(value, key);
      else if (key == "replicates") sm.replicates = parse_int(value, key);
      else if (key == "seed") sm.seed = parse_u64(value, key);
      else if (key == "x0") sm.x0 = parse_number(value, key);
      else if (key == "bins") sm.bins = parse_int(value, key);
      else if (key == "a") sm.a = parse_number(value, key);
      else if (key == "b") sm.b = parse_number(value, key);
      else throw InputError("config: unknown [sim] key '" + key + "'");
    } else if (section == "sweep") {
      auto& sw = cfg.sweep;
      if (key == "parameter") sw.parameter = value;
      else if (key == "values" || key == "grid") sw.values = parse_values(value, key);
      else throw InputError("config: unknown [sweep] key '" + key + "'");
    } else {
      throw InputError("config line " + std::to_string(lineno) +
                       ": key outside any section");
    }
  }

  auto& pr = cfg.problem;
  for (const auto& [key, value] : problem_raw) {
    if (key == "catalog") pr.catalog = value;
  }
  for (const auto& [key, value] : problem_raw) {
    if (key == "catalog") continue;
    if (key == "anchor") pr.anchor = parse_number(value, key);
    else if (key == "bracket_lo") pr.bracket_lo = parse_number(value, key);
    else if (key == "bracket_hi") pr.bracket_hi = parse_number(value, key);
    else if (pr.catalog) pr.catalog_params[key] = parse_number(value, key);
    else if (key == "drift") pr.drift = value;
    else if (key == "sigma") pr.sigma = value;
    else if (key == "cost") pr.cost = value;
    else if (key == "q_u") pr.q_u = parse_number(value, key);
    else if (key == "q_d") pr.q_d = parse_number(value, key);
    else throw InputError("config: unknown [problem] key '" + key + "'");
  }
  if (!pr.catalog) {
    if (!(pr.drift && pr.sigma && pr.cost))
      throw InputError("config: expression problems need drift, sigma and cost");
  } else {
    catalog_validate(*pr.catalog, pr.catalog_params);  // reject early
  }
  if (cfg.sweep.present) {
    if (cfg.sweep.parameter.empty() || cfg.sweep.values.empty())
      throw InputError("config: [sweep] needs parameter and values/grid");
    if (!pr.catalog)
      throw InputError("config: sweeps require a catalog problem");
  }
  const std::string& mode = cfg.solver.mode;
  if (mode != "two" && mode != "down" && mode != "up" && mode != "fix_a" &&
      mode != "fix_b")
    throw InputError("config: [solver] mode must be two|down|up|fix_a|fix_b");
  if (mode == "fix_a" && !cfg.solver.fixed_a)
    throw InputError("config: mode fix_a needs fixed_a");
  if (mode == "fix_b" && !cfg.solver.fixed_b)
    throw InputError("config: mode fix_b needs fixed_b");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string dump_config(const RunConfig& c) {
  std::ostringstream out;
  auto num = [](double v) { return format_sig(v, 17); };
  out << "[problem]\n";
  if (c.problem.catalog) {
    out << "catalog = " << *c.problem.catalog << "\n";
    for (const auto& [k, v] : c.problem.catalog_params)
      out << k << " = " << num(v) << "\n";
  } else {
    out << "drift = " << *c.problem.drift << "\n";
    out << "sigma = " << *c.problem.sigma << "\n";
    out << "cost = " << *c.problem.cost << "\n";
    if (c.problem.q_u) out << "q_u = " << num(*c.problem.q_u) << "\n";
    if (c.problem.q_d) out << "q_d = " << num(*c.problem.q_d) << "\n";
  }
  out << "anchor = " << num(c.problem.anchor) << "\n";
  out << "bracket_lo = " << num(c.problem.bracket_lo) << "\n";
  out << "bracket_hi = " << num(c.problem.bracket_hi) << "\n";
  out << "\n[solver]\n";
  out << "quad_tol = " << num(c.solver.quad_tol) << "\n";
  out << "root_tol = " << num(c.solver.root_tol) << "\n";
  out << "foc_tol = " << num(c.solver.foc_tol) << "\n";
  out << "mode = " << c.solver.mode << "\n";
  if (c.solver.fixed_a) out << "fixed_a = " << num(*c.solver.fixed_a) << "\n";
  if (c.solver.fixed_b) out << "fixed_b = " << num(*c.solver.fixed_b) << "\n";
  out << "grid_n = " << c.solver.grid_n << "\n";
  if (c.sim.present) {
    out << "\n[sim]\n";
    out << "dt = " << num(c.sim.dt) << "\n";
    out << "horizon = " << num(c.sim.horizon) << "\n";
    out << "burn_in = " << num(c.sim.burn_in) << "\n";
    out << "replicates = " << c.sim.replicates << "\n";
    out << "seed = " << c.sim.seed << "\n";
    out << "x0 = " << num(c.sim.x0) << "\n";
    out << "bins = " << c.sim.bins << "\n";
    if (c.sim.a) out << "a = " << num(*c.sim.a) << "\n";
    if (c.sim.b) out << "b = " << num(*c.sim.b) << "\n";
  }
  if (c.sweep.present) {
    out << "\n[sweep]\n";
    out << "parameter = " << c.sweep.parameter << "\n";
    out << "values = ";
    for (std::size_t i = 0; i < c.sweep.values.size(); ++i) {
      if (i) out << ", ";
      out << num(c.sweep.values[i]);
    }
    out << "\n";
  }
  return out.str();
}

BuiltProblem build_problem(const RunConfig& c) {
  BuiltProblem built;
  const auto& pr = c.problem;
  if (pr.catalog) {
    const CatalogModel model = catalog_validate(*pr.catalog, pr.catalog_params);
    built.problem = catalog_problem(model);
  } else {
    Problem p;
    const Expr drift = Expr::parse(*pr.drift);
    const Expr sigma = Expr::parse(*pr.sigma);
    const Expr cost = Expr::parse(*pr.cost);
    p.diffusion.mu = {[drift](double x) { return drift.evaluate(x); },
                      drift.kink_points(pr.bracket_lo, pr.bracket_hi),
                      *pr.drift};
    p.diffusion.sigma = {[sigma](double x) { return sigma.evaluate(x); },
                         sigma.kink_points(pr.bracket_lo, pr.bracket_hi),
                         *pr.sigma};
    p.cost.c = {[cost](double x) { return cost.evaluate(x); },
                cost.kink_points(pr.bracket_lo, pr.bracket_hi), *pr.cost};
    p.cost.q_u = pr.q_u.value_or(1.0);
    p.cost.q_d = pr.q_d.value_or(1.0);
    p.diffusion.kinks = p.diffusion.mu.kinks;
    p.diffusion.kinks.insert(p.diffusion.kinks.end(),
                             p.diffusion.sigma.kinks.begin(),
                             p.diffusion.sigma.kinks.end());
    std::sort(p.diffusion.kinks.begin(), p.diffusion.kinks.end());
    built.problem = p;
  }
  built.problem.anchor = pr.anchor;
  built.problem.quad_tol = c.solver.quad_tol;
  built.problem.root_tol = c.solver.root_tol;
  built.problem.foc_tol = c.solver.foc_tol;
  built.problem.validate();
  built.bracket1 = {pr.bracket_lo, pr.bracket_hi};
  built.bracket2 = {pr.bracket_lo, pr.bracket_hi};
  return built;
}

}  // namespace ergo

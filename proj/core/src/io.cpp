#include "xsmoo/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "xsmoo/errors.hpp"

namespace xsmoo {

namespace {

using json = nlohmann::json;

json aux_to_json(const VariableSpace& s) {
  json out = json::array();
  for (const auto& r : s.aux_ranges()) {
    json owner = r.owner == kSharedAux ? json("shared") : json(r.owner);
    out.push_back({{"count", r.count}, {"owner", owner}});
  }
  return out;
}

void aux_from_json(const json& j, VariableSpace& s) {
  for (const json& r : j) {
    const json& owner = r.at("owner");
    const std::size_t o = owner.is_string() ? kSharedAux : owner.get<std::size_t>();
    if (owner.is_string() && owner.get<std::string>() != "shared") throw ParseError("aux owner must be an index or \"shared\"", 0);
    s.allocate_aux(r.at("count").get<std::size_t>(), o);
  }
}

json lits_to_json(const std::vector<Lit>& lits) {
  json out = json::array();
  for (Lit l : lits) out.push_back(l.to_dimacs());
  return out;
}

std::vector<Lit> lits_from_json(const json& j) {
  std::vector<Lit> out;
  for (const json& v : j) {
    const long d = v.get<long>();
    if (d == 0) throw ParseError("literal 0 is not a variable", 0);
    out.push_back(Lit::from_dimacs(d));
  }
  return out;
}

json vars_to_json(const std::vector<Var>& vars) {
  json out = json::array();
  for (Var v : vars) out.push_back(v + 1);
  return out;
}

std::vector<Var> vars_from_json(const json& j) {
  std::vector<Var> out;
  for (const json& v : j) {
    const long d = v.get<long>();
    if (d <= 0) throw ParseError("variable ids are 1-based and positive", 0);
    out.push_back(static_cast<Var>(d - 1));
  }
  return out;
}

json formula_to_json(const Formula& f) {
  json out;
  out["aux"] = aux_to_json(f.space());
  json clauses = json::array();
  for (const Clause& c : f.clauses()) clauses.push_back(lits_to_json(c));
  out["clauses"] = std::move(clauses);
  json xors = json::array();
  for (const XorConstraint& x : f.xors()) xors.push_back({{"vars", vars_to_json(x.vars)}, {"parity", x.parity ? 1 : 0}});
  out["xors"] = std::move(xors);
  json cards = json::array();
  for (const CardinalityConstraint& c : f.cards()) cards.push_back({{"lits", lits_to_json(c.lits)}, {"bound", c.bound}});
  out["cards"] = std::move(cards);
  return out;
}

Formula formula_from_json(const json& j, const VariableSpace& base) {
  VariableSpace space = base;
  if (j.contains("aux")) aux_from_json(j["aux"], space);
  Formula f(space);
  for (const json& c : j.value("clauses", json::array())) f.add_clause(lits_from_json(c));
  for (const json& x : j.value("xors", json::array())) {
    const int parity = x.at("parity").get<int>();
    if (parity != 0 && parity != 1) throw ParseError("xor parity must be 0 or 1", 0);
    f.add_xor({vars_from_json(x.at("vars")), parity == 1});
  }
  for (const json& c : j.value("cards", json::array())) {
    f.add_cardinality({lits_from_json(c.at("lits")), c.at("bound").get<std::size_t>()});
  }
  return f;
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("rationals are written as \"num/den\" strings or integers", 0);
}

json rationals_to_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const Rational& r : v) out.push_back(to_string(r));
  return out;
}

std::vector<Rational> rationals_from_json(const json& j) {
  std::vector<Rational> out;
  for (const json& v : j) out.push_back(rational_from_json(v));
  return out;
}

}  // namespace

std::string problem_to_json(const SmooProblem& problem) {
  const VariableSpace& s = problem.space();
  json j;
  j["schema"] = kInstanceSchema;
  j["kind"] = problem.is_weighted() ? "weighted" : "unweighted";
  j["decisions"] = s.decision_count();
  j["latent"] = s.latent_sizes();
  j["aux"] = aux_to_json(s);
  json objs = json::array();
  if (problem.is_weighted()) {
    for (const WeightedObjective& w : problem.weighted_objectives()) {
      json factors = json::array();
      for (const WeightFactor& f : w.factors) {
        factors.push_back({{"scope", vars_to_json(f.scope)}, {"table", rationals_to_json(f.table)}});
      }
      objs.push_back({{"hard", formula_to_json(w.hard)},
                      {"factors", std::move(factors)},
                      {"lower", to_string(w.lower)},
                      {"upper", to_string(w.upper)}});
    }
  } else {
    for (const UnweightedObjective& u : problem.unweighted_objectives()) objs.push_back({{"formula", formula_to_json(u.formula)}});
  }
  j["objectives"] = std::move(objs);
  j["decision_constraints"] = formula_to_json(problem.decision_constraints());
  if (problem.has_costs()) j["costs"] = rationals_to_json(problem.costs());
  return j.dump(2) + "\n";
}

SmooProblem problem_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.value("schema", std::string()) != kInstanceSchema) {
      throw ParseError(std::string("instance schema must be \"") + kInstanceSchema + "\"", 0);
    }
    VariableSpace base(j.at("decisions").get<std::size_t>(), j.at("latent").get<std::vector<std::size_t>>());
    VariableSpace space = base;
    if (j.contains("aux")) aux_from_json(j["aux"], space);
    const Formula dc = formula_from_json(j.value("decision_constraints", json::object()), base);
    const std::vector<Rational> costs = rationals_from_json(j.value("costs", json::array()));
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "unweighted") {
      std::vector<Formula> objs;
      for (const json& o : j.at("objectives")) objs.push_back(formula_from_json(o.at("formula"), base));
      return SmooProblem::unweighted(space, std::move(objs), dc, costs);
    }
    if (kind != "weighted") throw ParseError("kind must be \"unweighted\" or \"weighted\"", 0);
    std::vector<WeightedObjective> objs;
    for (const json& o : j.at("objectives")) {
      WeightedObjective w;
      w.index = objs.size();
      w.hard = formula_from_json(o.at("hard"), base);
      for (const json& f : o.value("factors", json::array())) {
        w.factors.push_back({vars_from_json(f.at("scope")), rationals_from_json(f.at("table"))});
      }
      w.lower = rational_from_json(o.at("lower"));
      w.upper = rational_from_json(o.at("upper"));
      objs.push_back(std::move(w));
    }
    return SmooProblem::weighted(space, std::move(objs), dc, costs);
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance JSON: ") + e.what(), 0);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

SmooProblem load_problem(const std::string& path) { return problem_from_json(read_file(path)); }

void save_problem(const SmooProblem& problem, const std::string& path) { write_file(path, problem_to_json(problem)); }

std::string report_to_json(const RunReport& r, bool include_timing) {
  json j;
  j["schema"] = kReportSchema;
  j["objectives"] = r.objectives;
  j["decisions"] = r.decisions;
  j["latent_sizes"] = r.latent_sizes;
  j["grid_size"] = r.grid_size;
  j["grid_size_product"] = r.grid_size_product;
  j["delta"] = r.delta;
  j["epsilon"] = r.epsilon;
  j["l_star"] = r.l_star;
  j["eta"] = r.eta;
  j["tau"] = r.tau;
  j["m"] = r.m;
  j["seed"] = r.seed;
  j["backend"] = r.backend;
  j["oracle"] = to_string(r.strategy);
  j["time_limit_s"] = r.time_limit_s;
  j["jobs"] = r.jobs;
  j["tally"] = {{"sat", r.sat}, {"unsat", r.unsat}, {"indeterminate", r.indeterminate}};
  j["all_indeterminate"] = r.all_indeterminate;
  if (include_timing) j["wall_time_s"] = r.wall_time_s;
  if (r.weighted) {
    const WeightedParams& w = *r.weighted;
    json wj;
    wj["T"] = w.T;
    wj["b"] = w.b;
    wj["gamma"] = w.gamma ? json(*w.gamma) : json(nullptr);
    // infinite when some lower bound is zero
    wj["zeta"] = std::isfinite(w.zeta) ? json(w.zeta) : json(nullptr);
    wj["factor"] = std::isfinite(w.factor) ? json(w.factor) : json(nullptr);
    wj["lower"] = rationals_to_json(w.lower);
    wj["upper"] = rationals_to_json(w.upper);
    wj["estimates"] = w.estimates;
    j["weighted"] = std::move(wj);
  }
  json frontier = json::array();
  for (const FrontierEntry& e : r.frontier) {
    json row{{"x", e.x.to_string()}, {"p", rationals_to_json(e.p)}};
    if (e.cost) row["cost"] = to_string(*e.cost);
    frontier.push_back(std::move(row));
  }
  j["frontier_size"] = r.frontier.size();
  j["frontier"] = std::move(frontier);
  json outcomes = json::array();
  for (const PointOutcome& o : r.outcomes) {
    json row{{"exponents", o.point.exponents}, {"status", to_string(o.status)}, {"seed", o.seed}};
    if (o.status == OracleStatus::Sat) row["x"] = o.x.to_string();
    outcomes.push_back(std::move(row));
  }
  j["outcomes"] = std::move(outcomes);
  return j.dump(2) + "\n";
}

void write_frontier_csv(std::ostream& out, const Frontier& frontier, std::size_t objectives) {
  bool has_cost = false;
  for (const FrontierEntry& e : frontier) has_cost = has_cost || e.cost.has_value();
  out << "x";
  for (std::size_t i = 1; i <= objectives; ++i) out << ",p_" << i;
  if (has_cost) out << ",cost";
  out << "\n";
  for (const FrontierEntry& e : frontier) {
    out << e.x.to_string();
    for (const Rational& v : e.p) out << ',' << to_string(v);
    if (has_cost) out << ',' << (e.cost ? to_string(*e.cost) : std::string("0"));
    out << "\n";
  }
}

std::string frontier_to_csv(const Frontier& frontier, std::size_t objectives) {
  std::ostringstream ss;
  write_frontier_csv(ss, frontier, objectives);
  return ss.str();
}

}  // namespace xsmoo

#include "xsmoo/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "xsmoo/errors.hpp"
#include "xsmoo/solver.hpp"

namespace xsmoo {

namespace {

using json = nlohmann::json;

// "at least bound of lits"; a bound past the literal count becomes the
// canonical impossible bound.
void at_least(Formula& f, std::vector<Lit> lits, long bound) {
  if (bound <= 0) return;
  const long cap = static_cast<long>(lits.size()) + 1;
  f.add_cardinality({std::move(lits), static_cast<std::size_t>(std::min(bound, cap))});
}

std::vector<Lit> negated(const std::vector<Lit>& lits) {
  std::vector<Lit> out;
  for (Lit l : lits) out.push_back(~l);
  return out;
}

std::vector<Lit> concat(std::vector<Lit> a, const std::vector<Lit>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Enforces sum(in) - sum(out) == net with two cardinalities, using
// sum(~l) = |lits| - sum(l).
void net_flow(Formula& f, const std::vector<Lit>& in, const std::vector<Lit>& out, long net) {
  if (in.empty() && out.empty()) {
    if (net != 0) f.add_clause({});
    return;
  }
  const long nin = static_cast<long>(in.size());
  const long nout = static_cast<long>(out.size());
  at_least(f, concat(in, negated(out)), nout + net);
  at_least(f, concat(negated(in), out), nin - net);
}

Rational parse_json_rational(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("expected a rational as \"num/den\" text or an integer", 0);
}

Rational twentieths(std::uint64_t n) {
  Rational q(static_cast<long>(n), 20);
  q.canonicalize();
  return q;
}

Rational round_half_up(const Rational& v) {
  Rational shifted = v + Rational(1, 2);
  return Rational(floor(shifted));
}

// Max and min of the factor product over all joint-scope assignments.
std::pair<Rational, Rational> scope_extremes(const WeightedObjective& obj) {
  const std::vector<Var> scope = obj.joint_scope();
  if (scope.size() > scope_limit()) {
    throw LimitExceeded("joint factor scope of " + std::to_string(scope.size()) + " variables exceeds limit " +
                        std::to_string(scope_limit()));
  }
  Assignment a(obj.hard.space().total());
  Rational lo, hi;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << scope.size()); ++bits) {
    for (std::size_t t = 0; t < scope.size(); ++t) a.set(scope[t], (bits >> t) & 1);
    const Rational w = obj.factor_product(a);
    if (bits == 0 || w < lo) lo = w;
    if (bits == 0 || w > hi) hi = w;
  }
  return {lo, hi};
}

}  // namespace

void NetworkSpec::validate() const {
  if (nodes < 2) throw std::invalid_argument("network needs at least two nodes");
  if (source >= nodes || target >= nodes) throw std::invalid_argument("source or target out of range");
  if (source == target) throw std::invalid_argument("source and target must differ");
  for (const Edge& e : edges) {
    if (e.from >= nodes || e.to >= nodes) throw std::invalid_argument("edge endpoint out of range");
    if (e.from == e.to) throw std::invalid_argument("self loops are not supported");
    if (e.distance < 0) throw std::invalid_argument("negative edge distance");
  }
  if (hops && *hops < 1) throw std::invalid_argument("hop limit must be at least 1");
  if (budget_fraction && (*budget_fraction < 0 || *budget_fraction > 1)) {
    throw std::invalid_argument("budget fraction must lie in [0, 1]");
  }
}

void EventModel::validate(const NetworkSpec& net) const {
  if (seasons.empty()) throw std::invalid_argument("event model needs at least one season");
  for (const Event& ev : events) {
    for (std::size_t e : ev.edges) {
      if (e >= net.edges.size()) throw std::invalid_argument("event references edge " + std::to_string(e));
    }
    if (ev.parents.size() > 2) throw std::invalid_argument("events take at most two parent regimes");
    for (std::size_t r : ev.parents) {
      if (r >= regimes) throw std::invalid_argument("event references regime " + std::to_string(r));
    }
    if (ev.parents.size() == 2 && ev.parents[0] == ev.parents[1]) {
      throw std::invalid_argument("duplicate parent regime");
    }
  }
  auto prob = [](const Rational& p) {
    if (p < 0 || p > 1) throw std::invalid_argument("probability outside [0, 1]: " + to_string(p));
  };
  for (const Season& s : seasons) {
    if (s.regime_prob.size() != regimes) throw std::invalid_argument("season '" + s.name + "' regime count");
    if (s.event_prob.size() != events.size()) throw std::invalid_argument("season '" + s.name + "' event count");
    for (const Rational& p : s.regime_prob) prob(p);
    for (std::size_t i = 0; i < events.size(); ++i) {
      if (s.event_prob[i].size() != (std::size_t{1} << events[i].parents.size())) {
        throw std::invalid_argument("season '" + s.name + "' event " + std::to_string(i) + " needs one row per parent assignment");
      }
      for (const Rational& p : s.event_prob[i]) prob(p);
    }
  }
}

Rational EventModel::total_mass(std::size_t season) const {
  const Season& s = seasons.at(season);
  const std::size_t bits = regimes + events.size();
  Rational total = 0;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << bits); ++a) {
    Rational w = 1;
    for (std::size_t r = 0; r < regimes; ++r) w *= ((a >> r) & 1) ? s.regime_prob[r] : 1 - s.regime_prob[r];
    for (std::size_t i = 0; i < events.size(); ++i) {
      std::size_t row = 0;
      for (std::size_t t = 0; t < events[i].parents.size(); ++t) row |= ((a >> events[i].parents[t]) & 1) << t;
      const Rational& q = s.event_prob[i][row];
      w *= ((a >> (regimes + i)) & 1) ? q : 1 - q;
    }
    total += w;
  }
  return total;
}

SupplyChainProblem encode_supply_chain(const NetworkSpec& spec) {
  spec.validate();
  const std::size_t m = spec.edges.size();
  VariableSpace space(m, {m});
  Formula f(space);
  for (std::size_t e = 0; e < m; ++e) f.add_clause({Lit::neg(space.latent(0, e)), Lit::pos(space.decision(e))});

  std::vector<std::vector<Lit>> in(spec.nodes), out(spec.nodes);
  for (std::size_t e = 0; e < m; ++e) {
    const Lit flow = Lit::pos(space.latent(0, e));
    out[spec.edges[e].from].push_back(flow);
    in[spec.edges[e].to].push_back(flow);
  }
  for (std::size_t v = 0; v < spec.nodes; ++v) {
    long net = 0;
    if (v == spec.source) net = -1;
    if (v == spec.target) net = 1;
    net_flow(f, in[v], out[v], net);
  }

  std::vector<Rational> cost;
  for (const Edge& e : spec.edges) cost.push_back(e.distance);
  SmooProblem p = SmooProblem::unweighted(space, {f}, Formula(space), cost);
  return {std::move(p), std::move(cost)};
}

std::pair<Rational, Rational> weight_bounds(const WeightedObjective& obj) {
  auto [lo, hi] = scope_extremes(obj);
  if (obj.hard.has_constraints()) lo = 0;
  // bounds must satisfy U > L
  if (hi == lo) {
    if (lo > 0) {
      lo = 0;
    } else {
      hi = 1;
    }
  }
  return {lo, hi};
}

SmooProblem encode_road_network(const NetworkSpec& spec, const EventModel& events, int weight_scale) {
  spec.validate();
  events.validate(spec);
  if (!spec.hops) throw std::invalid_argument("road encoding needs a hop limit");
  if (weight_scale < 0) throw std::invalid_argument("weight_scale must be nonnegative");

  RoadLayout lay;
  lay.events = events.events.size();
  lay.regimes = events.regimes;
  lay.nodes = spec.nodes;
  lay.hops = *spec.hops;
  lay.edges = spec.edges.size();
  const std::size_t k = events.seasons.size();
  VariableSpace space(lay.edges, std::vector<std::size_t>(k, lay.block_size()));

  std::vector<std::vector<std::size_t>> hit(lay.edges);
  for (std::size_t i = 0; i < lay.events; ++i) {
    for (std::size_t e : events.events[i].edges) hit[e].push_back(i);
  }

  std::vector<WeightedObjective> objectives;
  for (std::size_t b = 0; b < k; ++b) {
    auto y = [&](std::size_t j) { return space.latent(b, j); };
    Formula hard(space);
    const Var base = hard.fresh(lay.aux_size(), b);
    auto aux = [&](std::size_t j) { return base + static_cast<Var>(j); };

    // u_e <-> x_e or no affecting event fired
    for (std::size_t e = 0; e < lay.edges; ++e) {
      const Var u = aux(lay.operational(e));
      hard.add_clause({Lit::neg(space.decision(e)), Lit::pos(u)});
      Clause quiet{Lit::pos(u)};
      for (std::size_t i : hit[e]) {
        quiet.push_back(Lit::pos(y(lay.event(i))));
        hard.add_clause({Lit::neg(u), Lit::pos(space.decision(e)), Lit::neg(y(lay.event(i)))});
      }
      hard.add_clause(std::move(quiet));
    }

    for (std::size_t v = 0; v < lay.nodes; ++v) hard.add_unit(Lit(aux(lay.reach(v, 0)), v != spec.source));

    // r_{v,k} <-> r_{v,k-1} or some (u,v) with r_{u,k-1} and u_e
    for (int h = 1; h <= lay.hops; ++h) {
      std::vector<Clause> support(lay.nodes);
      for (std::size_t v = 0; v < lay.nodes; ++v) {
        const Lit now = Lit::pos(aux(lay.reach(v, h)));
        const Lit before = Lit::pos(aux(lay.reach(v, h - 1)));
        hard.add_clause({~before, now});
        support[v] = {~now, before};
      }
      for (std::size_t e = 0; e < lay.edges; ++e) {
        const Lit a = Lit::pos(aux(lay.conjunction(h, e)));
        const Lit from = Lit::pos(aux(lay.reach(spec.edges[e].from, h - 1)));
        const Lit op = Lit::pos(aux(lay.operational(e)));
        hard.add_clause({~a, from});
        hard.add_clause({~a, op});
        hard.add_clause({a, ~from, ~op});
        hard.add_clause({~a, Lit::pos(aux(lay.reach(spec.edges[e].to, h)))});
        support[spec.edges[e].to].push_back(a);
      }
      for (Clause& c : support) hard.add_clause(std::move(c));
    }
    hard.add_unit(Lit::pos(aux(lay.reach(spec.target, lay.hops))));

    WeightedObjective obj;
    obj.index = b;
    obj.hard = std::move(hard);
    const EventModel::Season& season = events.seasons[b];
    for (std::size_t r = 0; r < lay.regimes; ++r) {
      obj.factors.push_back({{y(lay.regime(r))}, {1 - season.regime_prob[r], season.regime_prob[r]}});
    }
    for (std::size_t i = 0; i < lay.events; ++i) {
      WeightFactor fac;
      fac.scope.push_back(y(lay.event(i)));
      for (std::size_t r : events.events[i].parents) fac.scope.push_back(y(lay.regime(r)));
      for (std::size_t idx = 0; idx < (std::size_t{1} << fac.scope.size()); ++idx) {
        const Rational& q = season.event_prob[i][idx >> 1];
        fac.table.push_back((idx & 1) ? q : 1 - q);
      }
      obj.factors.push_back(std::move(fac));
    }
    std::tie(obj.lower, obj.upper) = weight_bounds(obj);
    objectives.push_back(std::move(obj));
  }

  Formula budget(space);
  if (spec.budget_fraction) {
    const Rational cap_q = *spec.budget_fraction * Rational(static_cast<long>(lay.edges));
    const long cap = floor(cap_q).get_si();
    std::vector<Lit> off;
    for (std::size_t e = 0; e < lay.edges; ++e) off.push_back(Lit::neg(space.decision(e)));
    at_least(budget, off, static_cast<long>(lay.edges) - cap);
  }
  SmooProblem p = SmooProblem::weighted(space, std::move(objectives), std::move(budget));
  if (weight_scale == 0) return p;
  return discretize_weights(p, weight_scale).problem;
}

DiscretizedProblem discretize_weights(const SmooProblem& weighted, int scale) {
  if (!weighted.is_weighted()) throw std::invalid_argument("discretize_weights needs a weighted problem");
  if (scale < 1) throw std::invalid_argument("scale must be at least 1");
  DiscretizedProblem out{weighted, false};
  std::vector<WeightedObjective> objs = weighted.weighted_objectives();
  for (WeightedObjective& obj : objs) {
    const WeightedObjective before = obj;
    for (WeightFactor& f : obj.factors) {
      for (Rational& v : f.table) v = round_half_up(v * scale);
    }
    const std::vector<Var> scope = obj.joint_scope();
    if (scope.size() <= scope_limit()) {
      Assignment a(obj.hard.space().total());
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << scope.size()); ++bits) {
        for (std::size_t t = 0; t < scope.size(); ++t) a.set(scope[t], (bits >> t) & 1);
        if (before.factor_product(a) > 0 && obj.factor_product(a) == 0) out.zero_weight = true;
      }
    }
    std::tie(obj.lower, obj.upper) = weight_bounds(obj);
  }
  out.problem = SmooProblem::weighted(weighted.space(), std::move(objs), weighted.decision_constraints(),
                                      weighted.costs());
  return out;
}

Rational rounded_distance(double dx, double dy) {
  Rational d(static_cast<long>(std::llround(std::hypot(dx, dy) * 1000.0)), 1000);
  d.canonicalize();
  return d;
}

GeneratedInstance generate_random_instance(Family family, const GeneratorParams& params, std::uint64_t seed) {
  // Raw engine output only: distributions are not portable across standard libraries.
  std::mt19937_64 rng(seed);
  auto below = [&](std::uint64_t n) { return rng() % n; };
  GeneratedInstance out;
  NetworkSpec& net = out.network;

  if (family == Family::Supply) {
    if (params.nodes < 3 || params.nodes > 12) throw std::invalid_argument("supply family supports 3..12 nodes");
    if (params.degree < 1 || params.degree > 3) throw std::invalid_argument("supply family supports degree 1..3");
    std::vector<std::pair<long, long>> pos;
    for (std::size_t i = 0; i < params.nodes; ++i) {
      const long px = static_cast<long>(below(101));
      const long py = static_cast<long>(below(101));
      pos.emplace_back(px, py);
    }
    net.nodes = params.nodes;
    net.source = 0;
    net.target = params.nodes - 1;
    for (std::size_t i = 0; i < params.nodes; ++i) {
      std::vector<std::pair<long, std::size_t>> near;
      for (std::size_t j = 0; j < params.nodes; ++j) {
        if (j == i || j == net.source || i == net.target) continue;
        const long dx = pos[i].first - pos[j].first, dy = pos[i].second - pos[j].second;
        near.emplace_back(dx * dx + dy * dy, j);
      }
      std::sort(near.begin(), near.end());
      for (std::size_t t = 0; t < std::min(params.degree, near.size()); ++t) {
        const std::size_t j = near[t].second;
        net.edges.push_back({i, j,
                             rounded_distance(static_cast<double>(pos[i].first - pos[j].first),
                                              static_cast<double>(pos[i].second - pos[j].second))});
      }
    }
    return out;
  }

  if (params.rows < 1 || params.cols < 1 || params.rows > 4 || params.cols > 4 || params.rows * params.cols < 2) {
    throw std::invalid_argument("road family supports grids from 1x2 up to 4x4");
  }
  if (params.events > 6 || params.regimes > 3) throw std::invalid_argument("road family supports <= 6 events, <= 3 regimes");
  net.nodes = params.rows * params.cols;
  net.source = 0;
  net.target = net.nodes - 1;
  net.hops = static_cast<int>(params.rows + params.cols - 2);
  net.budget_fraction = params.budget_fraction;
  auto node = [&](std::size_t r, std::size_t c) { return r * params.cols + c; };
  for (std::size_t r = 0; r < params.rows; ++r) {
    for (std::size_t c = 0; c < params.cols; ++c) {
      if (c + 1 < params.cols) net.edges.push_back({node(r, c), node(r, c + 1), 1});
      if (r + 1 < params.rows) net.edges.push_back({node(r, c), node(r + 1, c), 1});
    }
  }

  EventModel ev;
  ev.regimes = params.regimes;
  for (std::size_t i = 0; i < params.events; ++i) {
    EventModel::Event e;
    switch (i % 3) {
      case 0: {  // hub: every segment touching one node
        const std::size_t v = below(net.nodes);
        for (std::size_t t = 0; t < net.edges.size(); ++t) {
          if (net.edges[t].from == v || net.edges[t].to == v) e.edges.push_back(t);
        }
        break;
      }
      case 1: {  // contiguous: a short walk along outgoing segments
        std::size_t v = below(net.nodes);
        for (int step = 0; step < 2; ++step) {
          std::vector<std::size_t> outs;
          for (std::size_t t = 0; t < net.edges.size(); ++t) {
            if (net.edges[t].from == v) outs.push_back(t);
          }
          if (outs.empty()) break;
          const std::size_t t = outs[below(outs.size())];
          e.edges.push_back(t);
          v = net.edges[t].to;
        }
        break;
      }
      default: {  // random segments
        const std::size_t count = 1 + below(2);
        for (std::size_t t = 0; t < count; ++t) e.edges.push_back(below(net.edges.size()));
        break;
      }
    }
    std::sort(e.edges.begin(), e.edges.end());
    e.edges.erase(std::unique(e.edges.begin(), e.edges.end()), e.edges.end());
    if (ev.regimes > 0) {
      e.parents.push_back(below(ev.regimes));
      if (ev.regimes > 1 && below(2) == 1) {
        const std::size_t other = (e.parents[0] + 1 + below(ev.regimes - 1)) % ev.regimes;
        e.parents.push_back(other);
      }
    }
    ev.events.push_back(std::move(e));
  }
  for (const char* name : {"summer", "winter"}) {
    EventModel::Season s;
    s.name = name;
    for (std::size_t r = 0; r < ev.regimes; ++r) s.regime_prob.push_back(twentieths(1 + below(19)));
    for (const EventModel::Event& e : ev.events) {
      std::vector<Rational> rows;
      for (std::size_t j = 0; j < (std::size_t{1} << e.parents.size()); ++j) {
        rows.push_back(twentieths(1 + below(19)));
      }
      s.event_prob.push_back(std::move(rows));
    }
    ev.seasons.push_back(std::move(s));
  }
  out.events = std::move(ev);
  return out;
}

NetworkSpec read_tsplib(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> dimension;
  bool coords = false;
  std::vector<std::pair<double, double>> pos;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    std::string body = line.substr(first);
    if (body == "EOF") break;
    if (coords) {
      std::istringstream row(body);
      long id = 0;
      double px = 0, py = 0;
      if (!(row >> id >> px >> py)) {
        if (std::isalpha(static_cast<unsigned char>(body[0]))) {
          coords = false;
          continue;
        }
        throw ParseError("malformed coordinate row", lineno);
      }
      pos.emplace_back(px, py);
      continue;
    }
    if (body.rfind("NODE_COORD_SECTION", 0) == 0) {
      coords = true;
      continue;
    }
    const auto colon = body.find(':');
    if (colon == std::string::npos) continue;
    std::string key = body.substr(0, colon);
    key.erase(key.find_last_not_of(" \t") + 1);
    std::string value = body.substr(colon + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    if (key == "DIMENSION") {
      try {
        dimension = std::stoul(value);
      } catch (const std::exception&) {
        throw ParseError("bad DIMENSION", lineno);
      }
    } else if (key == "EDGE_WEIGHT_TYPE" && value != "EUC_2D" && value != "GEO" && value != "ATT") {
      throw ParseError("unsupported EDGE_WEIGHT_TYPE " + value, lineno);
    }
  }
  if (pos.size() < 2) throw ParseError("TSPLIB file has fewer than two coordinates", 0);
  if (dimension && *dimension != pos.size()) throw ParseError("DIMENSION does not match coordinate count", 0);
  NetworkSpec net;
  net.nodes = pos.size();
  net.source = 0;
  net.target = pos.size() - 1;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (std::size_t j = 0; j < pos.size(); ++j) {
      if (i == j) continue;
      net.edges.push_back({i, j, rounded_distance(pos[i].first - pos[j].first, pos[i].second - pos[j].second)});
    }
  }
  return net;
}

std::string network_to_json(const NetworkSpec& spec) {
  json j;
  j["schema"] = "xsmoo-network/1";
  j["nodes"] = spec.nodes;
  j["source"] = spec.source;
  j["target"] = spec.target;
  json edges = json::array();
  for (const Edge& e : spec.edges) edges.push_back({e.from, e.to, to_string(e.distance)});
  j["edges"] = std::move(edges);
  if (spec.hops) j["hops"] = *spec.hops;
  if (spec.budget_fraction) j["budget_fraction"] = to_string(*spec.budget_fraction);
  return j.dump(2) + "\n";
}

NetworkSpec network_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    NetworkSpec s;
    s.nodes = j.at("nodes").get<std::size_t>();
    s.source = j.at("source").get<std::size_t>();
    s.target = j.at("target").get<std::size_t>();
    for (const json& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw ParseError("edge must be [from, to, distance]", 0);
      s.edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), parse_json_rational(e[2])});
    }
    if (j.contains("hops")) s.hops = j["hops"].get<int>();
    if (j.contains("budget_fraction")) s.budget_fraction = parse_json_rational(j["budget_fraction"]);
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("network JSON: ") + e.what(), 0);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("network JSON: ") + e.what(), 0);
  }
}

std::string events_to_json(const EventModel& events) {
  json j;
  j["schema"] = "xsmoo-events/1";
  j["regimes"] = events.regimes;
  json evs = json::array();
  for (const EventModel::Event& e : events.events) evs.push_back({{"edges", e.edges}, {"parents", e.parents}});
  j["events"] = std::move(evs);
  json seasons = json::array();
  for (const EventModel::Season& s : events.seasons) {
    json regime = json::array();
    for (const Rational& p : s.regime_prob) regime.push_back(to_string(p));
    json rows = json::array();
    for (const auto& r : s.event_prob) {
      json row = json::array();
      for (const Rational& p : r) row.push_back(to_string(p));
      rows.push_back(std::move(row));
    }
    seasons.push_back({{"name", s.name}, {"regime_prob", std::move(regime)}, {"event_prob", std::move(rows)}});
  }
  j["seasons"] = std::move(seasons);
  return j.dump(2) + "\n";
}

EventModel events_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    EventModel m;
    m.regimes = j.value("regimes", std::size_t{0});
    for (const json& e : j.at("events")) {
      EventModel::Event ev;
      ev.edges = e.at("edges").get<std::vector<std::size_t>>();
      ev.parents = e.value("parents", std::vector<std::size_t>{});
      m.events.push_back(std::move(ev));
    }
    for (const json& s : j.at("seasons")) {
      EventModel::Season season;
      season.name = s.value("name", std::string());
      for (const json& p : s.value("regime_prob", json::array())) season.regime_prob.push_back(parse_json_rational(p));
      for (const json& row : s.at("event_prob")) {
        std::vector<Rational> r;
        for (const json& p : row) r.push_back(parse_json_rational(p));
        season.event_prob.push_back(std::move(r));
      }
      m.seasons.push_back(std::move(season));
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("event JSON: ") + e.what(), 0);
  }
}

}  // namespace xsmoo

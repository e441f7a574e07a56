#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "xsmoo/problem.hpp"

namespace xsmoo {

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  Rational distance = 0;
  bool operator==(const Edge&) const = default;
};

/// Directed network with a source/target pair. Edge e owns decision variable e.
struct NetworkSpec {
  std::size_t nodes = 0;
  std::vector<Edge> edges;
  std::size_t source = 0;
  std::size_t target = 1;
  /// Reachability horizon in road segments.
  std::optional<int> hops;
  /// Strengthening budget as a fraction of |E|.
  std::optional<Rational> budget_fraction;
  bool operator==(const NetworkSpec&) const = default;

  void validate() const;
};

/// Binary disruption events s_i driven by regime variables Z_r. A season
/// supplies Pr(Z_r = 1) and Pr(s_i = 1 | parents), one row per parent
/// assignment (parents[t] is bit t of the row index).
struct EventModel {
  struct Event {
    std::vector<std::size_t> edges;
    std::vector<std::size_t> parents;
    bool operator==(const Event&) const = default;
  };
  struct Season {
    std::string name;
    std::vector<Rational> regime_prob;
    std::vector<std::vector<Rational>> event_prob;
    bool operator==(const Season&) const = default;
  };

  std::size_t regimes = 0;
  std::vector<Event> events;
  std::vector<Season> seasons;
  bool operator==(const EventModel&) const = default;

  void validate(const NetworkSpec& net) const;
  /// Sum over all (Z, s) of the factored product for one season.
  Rational total_mass(std::size_t season) const;
};

struct SupplyChainProblem {
  /// One counting objective over flow variables f_e (block 0).
  SmooProblem problem;
  /// d_e per edge, also attached to the problem as its cost vector.
  std::vector<Rational> cost;
};

/// Unit-flow flexibility: f_e -> x_e, conservation at intermediate nodes and
/// exactly one unit of net flow from source to target.
SupplyChainProblem encode_supply_chain(const NetworkSpec& spec);

/// Variable layout for one season of the road encoding. The latent block
/// holds events then regimes; reachability r_{v,k}, operational u_e and the
/// conjunction helpers are aux variables owned by the objective, all fixed
/// by (x, s) so the projected count is unchanged.
struct RoadLayout {
  std::size_t events = 0;
  std::size_t regimes = 0;
  std::size_t nodes = 0;
  int hops = 0;
  std::size_t edges = 0;
  std::size_t block_size() const { return events + regimes; }
  std::size_t event(std::size_t i) const { return i; }
  std::size_t regime(std::size_t r) const { return events + r; }
  /// Offsets into the objective's aux range.
  std::size_t reach(std::size_t v, int k) const { return static_cast<std::size_t>(k) * nodes + v; }
  std::size_t operational(std::size_t e) const { return nodes * (static_cast<std::size_t>(hops) + 1) + e; }
  std::size_t conjunction(int k, std::size_t e) const {
    return operational(edges) + static_cast<std::size_t>(k - 1) * edges + e;
  }
  std::size_t aux_size() const { return conjunction(hops + 1, 0); }
};

/// One weighted objective per season: the probability that target is
/// reachable from source within `hops` segments. weight_scale 0 keeps the
/// exact rational tables; otherwise the tables go through discretize_weights.
SmooProblem encode_road_network(const NetworkSpec& spec, const EventModel& events, int weight_scale = 0);

struct DiscretizedProblem {
  SmooProblem problem;
  /// Some scope assignment with positive weight rounded down to zero.
  bool zero_weight = false;
};

/// Every factor entry becomes round(entry * scale) (half away from zero);
/// bounds are recomputed on the integer tables.
DiscretizedProblem discretize_weights(const SmooProblem& weighted, int scale);

/// Valid bounds from a scan of the joint factor scope: U is the largest
/// factor product; L the smallest, or 0 once the hard formula constrains
/// anything (a falsified hard formula weighs 0).
std::pair<Rational, Rational> weight_bounds(const WeightedObjective& obj);

enum class Family { Supply, Road };

struct GeneratorParams {
  /// Supply: node count. Road: ignored.
  std::size_t nodes = 5;
  /// Supply: out-edges per node towards its nearest neighbours.
  std::size_t degree = 2;
  /// Road grid.
  std::size_t rows = 2;
  std::size_t cols = 3;
  std::size_t events = 2;
  std::size_t regimes = 1;
  Rational budget_fraction{3, 10};
};

struct GeneratedInstance {
  NetworkSpec network;
  std::optional<EventModel> events;
};

/// Deterministic in (family, params, seed).
GeneratedInstance generate_random_instance(Family family, const GeneratorParams& params, std::uint64_t seed);

/// NODE_COORD_SECTION import: complete digraph over the cities, distances
/// rounded to 1/1000. Source is the first city, target the last.
NetworkSpec read_tsplib(std::istream& in);

/// Euclidean distance rounded to the nearest 1/1000.
Rational rounded_distance(double dx, double dy);

std::string network_to_json(const NetworkSpec& spec);
NetworkSpec network_from_json(const std::string& text);
std::string events_to_json(const EventModel& events);
EventModel events_from_json(const std::string& text);

}  // namespace xsmoo

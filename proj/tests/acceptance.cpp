// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Usage: acceptance <path-to-xsmoo> [scratch-dir]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "scenario_oracles.hpp"
#include "support.hpp"
#include "xsmoo/exact.hpp"
#include "xsmoo/hashing.hpp"
#include "xsmoo/metrics.hpp"
#include "xsmoo/oracle.hpp"
#include "xsmoo/pareto.hpp"
#include "xsmoo/scenarios.hpp"
#include "xsmoo/solver.hpp"

using namespace xsmoo;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double three_sigma(double p, int trials) { return 3 * std::sqrt(p * (1 - p) / trials); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

// A latent block of `bits` variables with exactly 2^free models (0 models
// when free < 0). Three shapes so the fixtures are not all cubes.
Formula counted(int shape, int free, std::mt19937_64& rng) {
  const std::size_t f = free < 0 ? 0 : static_cast<std::size_t>(free);
  const std::size_t extra = shape == 0 ? 2 : 3;
  VariableSpace s(1, {f + extra});
  Formula out(s);
  auto y = [&](std::size_t j) { return s.latent(0, j); };
  if (free < 0) {
    out.add_unit(Lit::pos(y(0)));
    out.add_unit(Lit::neg(y(0)));
    return out;
  }
  for (std::size_t j = f; j < f + extra; ++j) {
    if (shape == 0) {
      out.add_unit(Lit::neg(y(j)));
    } else if (shape == 1) {
      // y_j is a parity of the free variables
      XorConstraint x{{y(j)}, static_cast<bool>(rng() & 1)};
      for (std::size_t t = 0; t < f; ++t) {
        if (rng() & 1) x.vars.push_back(y(t));
      }
      out.add_xor(x);
    } else {
      // y_j tied to a free variable, or pinned when there is none
      if (f == 0) {
        out.add_unit(Lit::pos(y(j)));
        continue;
      }
      const Var src = y(rng() % f);
      const bool flip = rng() & 1;
      out.add_clause({Lit(y(j), true), Lit(src, flip)});
      out.add_clause({Lit(y(j), false), Lit(src, !flip)});
    }
  }
  return out;
}

struct CountFixture {
  int l;
  int shape;
};

std::vector<CountFixture> count_fixtures() {
  std::vector<CountFixture> out;
  for (int l = 1; l <= 4; ++l) out.push_back({l, 0});
  for (int l = 1; l <= 4; ++l) out.push_back({l, 1});
  for (int l = 1; l <= 2; ++l) out.push_back({l, 2});
  return out;
}

Formula fixture_formula(const CountFixture& fx, int free, std::uint64_t salt) {
  std::mt19937_64 rng(split_seed(salt, static_cast<std::uint64_t>(fx.l * 7 + fx.shape)));
  Formula f = counted(fx.shape, free, rng);
  return f;
}

Outcome xor_counting_rate() {
  auto be = make_backend("cdcl");
  const int trials = 2000;
  const double p = 5.0 / 9.0;
  const double floor = p - three_sigma(p, trials);
  double worst = 1;
  bool ok = true;
  for (const CountFixture& fx : count_fixtures()) {
    const Formula big = fixture_formula(fx, fx.l + 2, 1);
    const Formula small = fixture_formula(fx, fx.l - 2, 2);
    if (testing::brute_count(big, big.space().block_vars(0)) != (std::uint64_t{1} << (fx.l + 2))) return {false, "bad fixture"};
    Rng rng(split_seed(500, static_cast<std::uint64_t>(fx.l * 10 + fx.shape)));
    int yes = 0, no = 0;
    for (int t = 0; t < trials; ++t) {
      yes += *xor_counting(big, 0, fx.l, Assignment::from_bits(0, 1), *be, rng) ? 1 : 0;
      no += *xor_counting(small, 0, fx.l, Assignment::from_bits(0, 1), *be, rng) ? 0 : 1;
    }
    const double ry = static_cast<double>(yes) / trials, rn = static_cast<double>(no) / trials;
    worst = std::min({worst, ry, rn});
    ok = ok && ry >= floor && rn >= floor;
  }
  return {ok, "worst rate " + fmt(worst) + ", floor " + fmt(floor)};
}

// Amplified queries at tau = 3, decided by the decomposed oracle: same XOR
// draws as the materialized majority formula, far cheaper at m = 1080.
Outcome amplification_rate() {
  auto be = make_backend("cdcl");
  const int trials = 500;
  const double target = std::exp(-3.0);
  const double ceiling = target + three_sigma(target, trials);
  const std::size_t m = amplification_size(2, 3.0);
  double worst = 0;
  bool ok = true;
  auto query = [&](const Formula& f, int l, std::uint64_t seed) {
    const SmooProblem p = SmooProblem::unweighted(f.space(), {f}, Formula(f.space()));
    OracleQuery q;
    q.exponents = {l};
    q.l_star = 2;
    q.seed = seed;
    q.amplify.m_override = m;
    return xor_sat(p, q, *be).status;
  };
  for (const CountFixture& fx : count_fixtures()) {
    const Formula big = fixture_formula(fx, fx.l + 2, 1);
    const Formula small = fixture_formula(fx, fx.l - 2, 2);
    const std::uint64_t stream = 900 + static_cast<std::uint64_t>(fx.l * 10 + fx.shape);
    int fail_big = 0, fail_small = 0;
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t seed = split_seed(stream, static_cast<std::uint64_t>(t));
      fail_big += query(big, fx.l, seed) == OracleStatus::Sat ? 0 : 1;
      fail_small += query(small, fx.l, seed) == OracleStatus::Unsat ? 0 : 1;
    }
    const double fb = static_cast<double>(fail_big) / trials, fs_ = static_cast<double>(fail_small) / trials;
    worst = std::max({worst, fb, fs_});
    ok = ok && fb <= ceiling && fs_ <= ceiling;
  }
  return {ok, "m " + std::to_string(m) + ", worst failure rate " + fmt(worst) + ", ceiling " + fmt(ceiling)};
}

Outcome threshold_two_approx() {
  std::mt19937_64 rng(3003);
  int good = 0;
  const int instances = 100;
  for (int t = 0; t < instances; ++t) {
    const std::size_t n = 1 + rng() % 5, ys = 1 + rng() % 5, clauses = 1 + rng() % 8;
    const SmooProblem p = testing::random_unweighted(n, ys, clauses, rng);
    std::vector<ScoreVector> cand, ref;
    for (const auto& e : exact_threshold_frontier(p)) cand.push_back(exact_objectives(p, e.x));
    for (const auto& e : exact_pareto(p)) ref.push_back(e.p);
    good += is_gamma_approximate(cand, ref, Rational(2), Rational(1)) ? 1 : 0;
  }
  return {good == instances, std::to_string(good) + "/" + std::to_string(instances) + " instances"};
}

Outcome solver_32_approx() {
  std::mt19937_64 rng(4004);
  std::vector<SmooProblem> toys;
  for (int i = 0; i < 10; ++i) toys.push_back(testing::random_unweighted(3 + i % 2, 4 + i % 2, 4 + i % 4, rng));
  const int runs = 50;
  int good = 0;
  for (int r = 0; r < runs; ++r) {
    const SmooProblem& p = toys[static_cast<std::size_t>(r % 10)];
    SolveConfig cfg;
    cfg.delta = 0.2;
    cfg.epsilon = 3;
    cfg.seed = split_seed(4004, static_cast<std::uint64_t>(r));
    const auto [front, rep] = xor_smoo(p, cfg);
    std::vector<ScoreVector> cand, ref;
    for (const auto& e : front) cand.push_back(exact_objectives(p, e.x));
    for (const auto& e : exact_pareto(p)) ref.push_back(e.p);
    good += is_gamma_approximate(cand, ref, Rational(32), Rational(8)) ? 1 : 0;
  }
  const double rate = static_cast<double>(good) / runs;
  const double floor = 0.8 - three_sigma(0.8, runs);
  return {rate >= floor, std::to_string(good) + "/" + std::to_string(runs) + " runs, floor " + fmt(floor)};
}

// Weighted fixtures shared by criteria 5 and 6.
std::vector<SmooProblem> weighted_fixtures() {
  std::vector<SmooProblem> out;
  std::mt19937_64 rng(5005);
  for (int t = 0; t < 8; ++t) out.push_back(testing::random_weighted(2, 2, rng, t % 2 == 1));
  VariableSpace s(0, {1});
  WeightedObjective w;
  w.hard = Formula(s);
  w.factors = {{{s.latent(0, 0)}, {Rational(1), Rational(5)}}};
  w.lower = 1;
  w.upper = 5;
  out.push_back(SmooProblem::weighted(s, {w}, Formula(s)));
  NetworkSpec edge;
  edge.nodes = 2;
  edge.edges = {{0, 1, 1}};
  edge.hops = 1;
  EventModel ev;
  ev.events = {{{0}, {}}};
  ev.seasons = {{"summer", {}, {{Rational(3, 10)}}}, {"winter", {}, {{Rational(1, 2)}}}};
  out.push_back(encode_road_network(edge, ev));
  return out;
}

Outcome weighted_bounds() {
  std::size_t checked = 0, held = 0;
  for (const SmooProblem& p : weighted_fixtures()) {
    const std::size_t n = p.space().decision_count();
    for (const WeightedObjective& w : p.weighted_objectives()) {
      for (int b = 0; b <= 6; ++b) {
        for (std::uint64_t xb = 0; xb < (std::uint64_t{1} << n); ++xb) {
          ++checked;
          held += check_weighted_bounds(w, b, Assignment::from_bits(xb, n)) ? 1 : 0;
        }
      }
    }
  }
  return {held == checked, std::to_string(held) + "/" + std::to_string(checked) + " triples"};
}

Outcome pseudo_identity() {
  std::size_t checked = 0, held = 0;
  for (const SmooProblem& p : weighted_fixtures()) {
    const std::size_t n = p.space().decision_count();
    for (int T : {1, 2, 3}) {
      for (int b : {1, 2}) {
        const SmooProblem pseudo = build_pseudo(p, T, b);
        for (std::uint64_t xb = 0; xb < (std::uint64_t{1} << n); ++xb) {
          const Assignment x = Assignment::from_bits(xb, n);
          const std::vector<Rational> counts = exact_objectives(pseudo, x);
          for (std::size_t i = 0; i < counts.size(); ++i) {
            const mpz_class c = embedded_count(p.weighted_objectives()[i], b, x);
            mpz_class pw;
            mpz_pow_ui(pw.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(T));
            ++checked;
            held += counts[i] == Rational(pw) ? 1 : 0;
          }
        }
      }
    }
  }
  return {held == checked, std::to_string(held) + "/" + std::to_string(checked) + " counts"};
}

Outcome gamma_arithmetic() {
  const std::vector<std::pair<Rational, Rational>> five{{Rational(1), Rational(5)}};
  const auto two = params_for_gamma(2.0, five);
  const auto four = params_for_gamma(4.0, five);
  const bool ok = two.first == 10 && two.second == 3 && four.first == 5;
  return {ok, "gamma 2: T=" + std::to_string(two.first) + " b=" + std::to_string(two.second) +
                  "; gamma 4: T=" + std::to_string(four.first)};
}

double raster_hv(const PointSet& s, int scale) {
  double area = 0;
  const double cell = 1.0 / scale;
  for (int i = 0; i < 10 * scale; ++i) {
    for (int j = 0; j < 10 * scale; ++j) {
      const double cx = (i + 0.5) * cell, cy = (j + 0.5) * cell;
      for (const Point& p : s) {
        if (p[0] >= cx && p[1] >= cy) {
          area += cell * cell;
          break;
        }
      }
    }
  }
  return area;
}

Outcome metric_fixtures() {
  struct Case {
    double got, want;
  };
  const PointSet a{{1, 1}, {3, 2}};
  const std::vector<Case> cases{
      {gd(a, a), 0},
      {igd(a, a), 0},
      {gd({{1, 1}}, {{4, 5}}), 5},
      {gd({{0, 0}, {4, 5}}, {{4, 5}}), std::sqrt(41.0) / 2},
      {igd({{4, 5}}, {{1, 1}, {4, 5}}), 2.5},
      {igd({{4, 5}, {1, 1}}, {{4, 5}}), 0},
      {hv({{1, 2}, {2, 1}}, {0, 0}), 3},
      {hv({{1, 1}}, {0, 0}), 1},
      {hv({{2, 2}, {1, 1}}, {0, 0}), 4},
      {sp({{0, 0}, {5, 5}}), 0},
      {sp({{0, 0}, {1, 0}, {2, 0}}), 0},
      {sp({{0, 0}, {1, 0}, {3, 0}}), std::sqrt(1.0 / 3)},
  };
  std::size_t fixtures_ok = 0;
  for (const Case& c : cases) fixtures_ok += std::abs(c.got - c.want) <= 1e-9 ? 1 : 0;
  std::mt19937_64 rng(8008);
  int raster_ok = 0;
  for (int t = 0; t < 20; ++t) {
    PointSet s;
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      s.push_back({static_cast<double>(rng() % 40) / 4, static_cast<double>(rng() % 40) / 4});
    }
    raster_ok += std::abs(hv(s, {0, 0}) - raster_hv(s, 4)) <= 1e-9 ? 1 : 0;
  }
  return {fixtures_ok == cases.size() && raster_ok == 20,
          std::to_string(fixtures_ok) + "/" + std::to_string(cases.size()) + " fixtures, " +
              std::to_string(raster_ok) + "/20 raster"};
}

Outcome scenario_encodings() {
  std::mt19937_64 rng(9009);
  int flow_ok = 0, flow_total = 0;
  for (int t = 0; t < 12; ++t) {
    const std::size_t m = 3 + static_cast<std::size_t>(t % 8);
    const NetworkSpec net = testing::random_network(3 + t % 4, m, rng);
    const SupplyChainProblem sc = encode_supply_chain(net);
    const Formula& f = sc.problem.objective_formula(0);
    const std::vector<std::uint64_t> valid = testing::valid_flows(net);
    Assignment a(f.space().total());
    bool ok = true;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << m) && ok; ++x) {
      for (std::uint64_t fl = 0; fl < (std::uint64_t{1} << m); ++fl) {
        for (std::size_t e = 0; e < m; ++e) {
          a.set(f.space().decision(e), (x >> e) & 1);
          a.set(f.space().latent(0, e), (fl >> e) & 1);
        }
        const bool want = (fl & ~x) == 0 && std::binary_search(valid.begin(), valid.end(), fl);
        if (testing::holds(f, a) != want) {
          ok = false;
          break;
        }
      }
    }
    ++flow_total;
    flow_ok += ok ? 1 : 0;
  }
  int reach_ok = 0, reach_total = 0;
  for (int t = 0; t < 14; ++t) {
    NetworkSpec net = testing::random_network(2 + t % 7, 3 + t % 4, rng);
    net.hops = 1 + t % 5;
    ++reach_total;
    reach_ok += testing::check_reachability(net).empty() ? 1 : 0;
  }
  NetworkSpec tri;
  tri.nodes = 3;
  tri.source = 0;
  tri.target = 1;
  tri.edges = {{0, 1, 5}, {0, 2, 2}, {2, 1, 2}};
  const SupplyChainProblem sc = encode_supply_chain(tri);
  const Rational full = exact_objectives(sc.problem, Assignment::from_bits(0b111, 3))[0];
  const Rational cut = exact_objectives(sc.problem, Assignment::from_bits(0b110, 3))[0];
  const bool tri_ok = full == 2 && cut / full == Rational(1, 2);
  return {flow_ok == flow_total && reach_ok == reach_total && tri_ok,
          "flow " + std::to_string(flow_ok) + "/" + std::to_string(flow_total) + ", reachability " +
              std::to_string(reach_ok) + "/" + std::to_string(reach_total) + ", triangle F=" + full.get_str() +
              " ratio " + Rational(cut / full).get_str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run(const std::string& cmd) { return std::system((cmd + " 2>/dev/null").c_str()); }

Outcome determinism(const std::string& xsmoo, const fs::path& dir) {
  if (xsmoo.empty()) return {false, "no xsmoo binary given"};
  fs::create_directories(dir);
  const std::string q = "\"" + xsmoo + "\"";
  const fs::path inst = dir / "instance.json";
  if (run(q + " generate --family supply --seed 31 --nodes 5 --out \"" + inst.string() + "\"") != 0) {
    return {false, "generate failed"};
  }
  std::vector<std::string> names;
  for (int r = 0; r < 2; ++r) {
    const std::string tag = std::to_string(r);
    const fs::path out = dir / ("frontier" + tag + ".csv"), rep = dir / ("report" + tag + ".json");
    const fs::path bench = dir / ("bench" + tag + ".csv"), runs = dir / ("runs" + tag + ".csv");
    const int a = run(q + " solve \"" + inst.string() + "\" --seed 17 --reproducible --out \"" + out.string() +
                      "\" --report \"" + rep.string() + "\"");
    const int b = run(q + " bench --family supply --reps 3 --seed 17 --out \"" + bench.string() + "\" --runs \"" +
                      runs.string() + "\"");
    if (a != 0 || b != 0) return {false, "run " + tag + " exited nonzero"};
  }
  int same = 0;
  for (const char* stem : {"frontier", "report", "bench", "runs"}) {
    const std::string ext = std::string(stem) == "report" ? ".json" : ".csv";
    const std::string x = slurp(dir / (std::string(stem) + "0" + ext));
    const std::string y = slurp(dir / (std::string(stem) + "1" + ext));
    same += (!x.empty() && x == y) ? 1 : 0;
  }
  return {same == 4, std::to_string(same) + "/4 outputs byte-identical"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string xsmoo = argc > 1 ? argv[1] : "";
  const fs::path scratch = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "xsmoo-acceptance";

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"xor counting rate", xor_counting_rate},
      {"amplified failure rate", amplification_rate},
      {"threshold frontier 2-approximation", threshold_two_approx},
      {"solver 32-approximation", solver_32_approx},
      {"discretized weight bounds", weighted_bounds},
      {"pseudo power identity", pseudo_identity},
      {"gamma parameter arithmetic", gamma_arithmetic},
      {"metric fixtures", metric_fixtures},
      {"scenario encodings", scenario_encodings},
      {"determinism", [&] { return determinism(xsmoo, scratch); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += o.pass ? 0 : 1;
    std::cout << "criterion " << (i + 1) << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": "
              << o.detail << " (" << fmt(secs) << " s)" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}

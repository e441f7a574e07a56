#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "support.hpp"
#include "xsmoo/errors.hpp"
#include "xsmoo/exact.hpp"
#include "xsmoo/solver.hpp"

using namespace xsmoo;

namespace {

std::vector<ScoreVector> witness_scores(const SmooProblem& p, const Frontier& f) {
  std::vector<ScoreVector> out;
  for (const FrontierEntry& e : f) out.push_back(exact_objectives(p, e.x));
  return out;
}

std::vector<ScoreVector> pareto_scores(const SmooProblem& p) {
  std::vector<ScoreVector> out;
  for (const FrontierEntry& e : exact_pareto(p)) out.push_back(e.p);
  return out;
}

double three_sigma(double p, int trials) { return 3 * std::sqrt(p * (1 - p) / trials); }

WeightedObjective single(const VariableSpace& s, std::vector<Rational> table, Rational lo, Rational hi) {
  WeightedObjective w;
  w.hard = Formula(s);
  w.factors = {{{s.latent(0, 0)}, std::move(table)}};
  w.lower = lo;
  w.upper = hi;
  return w;
}

}  // namespace

TEST_CASE("build_grid examples") {
  VariableSpace s(1, {2, 3});
  const SmooProblem p = SmooProblem::unweighted(s, {Formula(s), Formula(s)}, Formula(s));
  const auto g = build_grid(p);
  REQUIRE(g.size() == 12);
  CHECK(g.front().exponents == std::vector<int>{0, 0});
  CHECK(g[1].exponents == std::vector<int>{0, 1});
  CHECK(g.back().exponents == std::vector<int>{2, 3});
  CHECK(g.back().thresholds() == std::vector<Rational>{4, 8});

  VariableSpace e(0, {0});
  const auto one = build_grid(SmooProblem::unweighted(e, {Formula(e)}, Formula(e)));
  REQUIRE(one.size() == 1);
  CHECK(one[0].exponents == std::vector<int>{0});

  VariableSpace w(1, {2});
  WeightedObjective obj;
  obj.hard = Formula(w);
  obj.factors = {{{w.latent(0, 0)}, {Rational(1), Rational(2)}}};
  obj.lower = 1;
  obj.upper = 2;
  const SmooProblem pseudo = build_pseudo(SmooProblem::weighted(w, {obj}, Formula(w)), 2, 1);
  CHECK(pseudo.space().block_size(0) == 6);
  CHECK(build_grid(pseudo).size() == 7);
}

TEST_CASE("xor_smoo: unsatisfiable objectives give an empty frontier") {
  VariableSpace s(2, {2, 2});
  Formula bad(s);
  bad.add_unit(Lit::pos(s.latent(0, 0)));
  bad.add_unit(Lit::neg(s.latent(0, 0)));
  Formula bad2(s);
  bad2.add_unit(Lit::pos(s.latent(1, 1)));
  bad2.add_unit(Lit::neg(s.latent(1, 1)));
  const SmooProblem p = SmooProblem::unweighted(s, {bad, bad2}, Formula(s));
  SolveConfig cfg;
  cfg.jobs = 1;
  const auto [front, rep] = xor_smoo(p, cfg);
  CHECK(front.empty());
  CHECK(rep.unsat == 9);
  CHECK(rep.grid_size == 9);
  CHECK(rep.grid_size_product == 4);
  CHECK(rep.eta == doctest::Approx(0.2 / 9));
  CHECK(rep.l_star == 2);
}

TEST_CASE("xor_smoo: tautology over four latents") {
  VariableSpace s(0, {4});
  const SmooProblem p = SmooProblem::unweighted(s, {Formula(s)}, Formula(s));
  SolveConfig cfg;
  cfg.seed = 3;
  const auto [front, rep] = xor_smoo(p, cfg);
  REQUIRE(front.size() == 1);
  CHECK(pow2(2 * 3 - 1) * exact_objectives(p, front[0].x)[0] >= Rational(16));
  CHECK(rep.m[0] == amplification_size(2, confidence_tau(1, 0, 0.2 / 5)));
}

TEST_CASE("xor_smoo is deterministic across runs and worker counts") {
  std::mt19937_64 rng(12);
  const SmooProblem p = testing::random_unweighted(3, 4, 5, rng);
  SolveConfig cfg;
  cfg.seed = 77;
  cfg.jobs = 1;
  const auto [a, ra] = xor_smoo(p, cfg);
  cfg.jobs = 3;
  const auto [b, rb] = xor_smoo(p, cfg);
  CHECK(a == b);
  REQUIRE(ra.outcomes.size() == rb.outcomes.size());
  for (std::size_t j = 0; j < ra.outcomes.size(); ++j) {
    CHECK(ra.outcomes[j].status == rb.outcomes[j].status);
    CHECK(ra.outcomes[j].x == rb.outcomes[j].x);
    CHECK(ra.outcomes[j].seed == split_seed(77, j));
  }
}

TEST_CASE("xor_smoo frontier entries come from Sat grid points") {
  std::mt19937_64 rng(13);
  const SmooProblem p = testing::random_unweighted(3, 4, 5, rng);
  SolveConfig cfg;
  cfg.seed = 5;
  const auto [front, rep] = xor_smoo(p, cfg);
  for (const FrontierEntry& e : front) {
    bool found = false;
    for (const PointOutcome& o : rep.outcomes) {
      found = found || (o.status == OracleStatus::Sat && o.point.thresholds() == e.p && o.x == e.x);
    }
    CHECK(found);
  }
  CHECK(rep.sat + rep.unsat + rep.indeterminate == rep.grid_size);
}

TEST_CASE("xor_smoo scores costs exactly and prunes on them") {
  VariableSpace s(2, {2});
  Formula f(s);
  f.add_clause({Lit::pos(s.decision(0)), Lit::pos(s.decision(1)), Lit::pos(s.latent(0, 0))});
  const SmooProblem p = SmooProblem::unweighted(s, {f}, Formula(s), {Rational(3), Rational(5)});
  SolveConfig cfg;
  const auto [front, rep] = xor_smoo(p, cfg);
  REQUIRE(!front.empty());
  for (const FrontierEntry& e : front) {
    REQUIRE(e.cost);
    CHECK(*e.cost == exact_cost(p, e.x));
  }
}

TEST_CASE("xor_smoo returns a 32-approximate frontier in most runs") {
  std::mt19937_64 rng(2);
  const SmooProblem p = testing::random_unweighted(4, 5, 6, rng);
  const auto ref = pareto_scores(p);
  const int runs = 50;
  int good = 0;
  for (int r = 0; r < runs; ++r) {
    SolveConfig cfg;
    cfg.delta = 0.2;
    cfg.epsilon = 3;
    cfg.seed = split_seed(1000, r);
    const auto [front, rep] = xor_smoo(p, cfg);
    good += is_gamma_approximate(witness_scores(p, front), ref, Rational(32), Rational(8)) ? 1 : 0;
  }
  CHECK(static_cast<double>(good) / runs >= 0.8 - three_sigma(0.8, runs));
}

TEST_CASE("embed_weighted examples") {
  VariableSpace s(0, {1});
  // f(y=0) = 3, f(y=1) = 5, L = 1, U = 5, b = 2
  const WeightedObjective w = single(s, {Rational(3), Rational(5)}, Rational(1), Rational(5));
  const EmbeddedObjective e = embed_weighted(w, 2);
  CHECK(e.z.size() == 2);
  CHECK(e.levels == std::vector<mpz_class>{2, 4});
  Formula at0 = e.formula;
  at0.add_unit(Lit::neg(e.formula.space().latent(0, 0)));
  CHECK(testing::brute_count(at0, e.z) == 2);

  const WeightedObjective floor_case = single(s, {Rational(1), Rational(5)}, Rational(1), Rational(5));
  const EmbeddedObjective f = embed_weighted(floor_case, 2);
  CHECK(f.levels[0] == 0);
  CHECK(embedded_count(floor_case, 2, Assignment(0)) == 4);
  CHECK(check_weighted_bounds(floor_case, 2, Assignment(0)));
  for (int b = 0; b <= 6; ++b) CHECK(check_weighted_bounds(floor_case, b, Assignment(0)));
}

TEST_CASE("embedding counts equal floor(r_b) per latent assignment") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const SmooProblem p = testing::random_weighted(2, 2, rng);
    for (const WeightedObjective& w : p.weighted_objectives()) {
      for (int b = 0; b <= 4; ++b) {
        const EmbeddedObjective e = embed_weighted(w, b);
        for (std::uint64_t xb = 0; xb < 4; ++xb) {
          const Assignment x = Assignment::from_bits(xb, 2);
          mpz_class expect = 0;
          for (std::uint64_t yb = 0; yb < 4; ++yb) {
            Assignment a(w.hard.space().total());
            a.set(0, x[0]);
            a.set(1, x[1]);
            for (std::size_t j = 0; j < 2; ++j) a.set(w.hard.space().latent(w.index, j), (yb >> j) & 1);
            const Rational r = (w.factor_product(a) - w.lower) / (w.upper - w.lower) * pow2(b);
            expect += floor(r);
          }
          CHECK(embedded_count(w, b, x) == expect);
        }
      }
    }
  }
}

TEST_CASE("embedding rejects oversized scopes") {
  VariableSpace s(0, {17});
  WeightedObjective w;
  w.hard = Formula(s);
  WeightFactor f;
  for (std::size_t j = 0; j < 17; ++j) f.scope.push_back(s.latent(0, j));
  f.table.assign(std::size_t{1} << 17, Rational(1));
  f.table[0] = 2;
  w.factors = {f};
  w.lower = 1;
  w.upper = 2;
  CHECK_THROWS_AS(embed_weighted(w, 1), LimitExceeded);
}

TEST_CASE("pseudo counts are powers of the embedded count") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 4; ++trial) {
    const SmooProblem p = testing::random_weighted(2, 2, rng, true);
    for (int T : {1, 2, 3}) {
      const SmooProblem pseudo = build_pseudo(p, T, 1);
      for (std::uint64_t xb = 0; xb < 4; ++xb) {
        const Assignment x = Assignment::from_bits(xb, 2);
        const std::vector<Rational> counts = exact_objectives(pseudo, x);
        for (std::size_t i = 0; i < 2; ++i) {
          mpz_class c = embedded_count(p.weighted_objectives()[i], 1, x);
          mpz_class pw;
          mpz_pow_ui(pw.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(T));
          CHECK(counts[i] == Rational(pw));
        }
      }
    }
  }
  // annihilation
  VariableSpace s(0, {1});
  const WeightedObjective zero = single(s, {Rational(1), Rational(1)}, Rational(1), Rational(2));
  const SmooProblem z = build_pseudo(SmooProblem::weighted(s, {zero}, Formula(s)), 3, 2);
  CHECK(exact_objectives(z, Assignment(0))[0] == 0);
}

TEST_CASE("params_for_gamma and zeta arithmetic") {
  const std::vector<std::pair<Rational, Rational>> five{{Rational(1), Rational(5)}};
  const std::vector<std::pair<Rational, Rational>> two{{Rational(1), Rational(2)}};
  CHECK(params_for_gamma(2.0, five) == std::pair<int, int>{10, 3});
  CHECK(params_for_gamma(2.0, two).second == 1);
  CHECK(params_for_gamma(4.0, five).first == 5);
  CHECK_THROWS_AS(params_for_gamma(2.0, {{Rational(0), Rational(5)}}), std::invalid_argument);
  CHECK_THROWS_AS(params_for_gamma(1.0, five), std::invalid_argument);
  CHECK(zeta(10, 3, five) == doctest::Approx(0.4369).epsilon(1e-3));
  CHECK(zeta(10, 3, five) == doctest::Approx(std::log2(1 + 4 / (std::sqrt(2.0) * 8))));
}

TEST_CASE("w_xor_smoo parameter handling") {
  VariableSpace s(1, {1});
  WeightedObjective w = single(s, {Rational(1), Rational(5)}, Rational(1), Rational(5));
  const SmooProblem p = SmooProblem::weighted(s, {w}, Formula(s));
  SolveConfig cfg;
  cfg.gamma = 2.0;
  cfg.T = 3;
  CHECK_THROWS_AS(w_xor_smoo(p, cfg), std::invalid_argument);
  SolveConfig none;
  CHECK_THROWS_AS(w_xor_smoo(p, none), std::invalid_argument);
  SolveConfig tb;
  tb.T = 1;
  tb.b = 2;
  const auto [front, rep] = w_xor_smoo(p, tb);
  REQUIRE(rep.weighted);
  CHECK(rep.weighted->T == 1);
  CHECK(rep.weighted->b == 2);
  CHECK(rep.epsilon == 3);
  CHECK(rep.weighted->estimates.size() == front.size());
}

TEST_CASE("w_xor_smoo witnesses approximate the weighted frontier") {
  std::mt19937_64 rng(21);
  const SmooProblem p = testing::random_weighted(2, 2, rng);
  const auto ref = pareto_scores(p);
  const int runs = 50;
  const double delta = 0.2;
  int good = 0;
  double factor = 0;
  for (int r = 0; r < runs; ++r) {
    SolveConfig cfg;
    cfg.delta = delta;
    cfg.T = 2;
    cfg.b = 2;
    cfg.seed = split_seed(500, r);
    const auto [front, rep] = w_xor_smoo(p, cfg);
    factor = rep.weighted->factor;
    good += is_gamma_approximate(witness_scores(p, front), ref, Rational(factor)) ? 1 : 0;
  }
  CHECK(factor == doctest::Approx(std::exp2(2.5 + zeta(2, 2, {{p.weighted_objectives()[0].lower,
                                                              p.weighted_objectives()[0].upper},
                                                             {p.weighted_objectives()[1].lower,
                                                              p.weighted_objectives()[1].upper}}))));
  CHECK(static_cast<double>(good) / runs >= 1 - delta - three_sigma(1 - delta, runs));
}

#include <doctest.h>

#include <cmath>
#include <set>

#include "support.hpp"
#include "xsmoo/hashing.hpp"
#include "xsmoo/sat.hpp"

using namespace xsmoo;

namespace {

// f over one latent block of `bits` variables, all but `free` of them pinned to 0.
Formula pinned(std::size_t n, std::size_t bits, std::size_t free) {
  VariableSpace s(n, {bits});
  Formula f(s);
  for (std::size_t j = free; j < bits; ++j) f.add_unit(Lit::neg(s.latent(0, j)));
  return f;
}

double three_sigma(double p, int trials) { return 3 * std::sqrt(p * (1 - p) / trials); }

}  // namespace

TEST_CASE("sample_xor: empty set, inclusion frequency, determinism") {
  Rng rng(11);
  const XorConstraint e = sample_xor({}, rng);
  CHECK(e.vars.empty());

  std::vector<Var> vars(10);
  for (Var v = 0; v < 10; ++v) vars[v] = v;
  std::vector<int> hits(10, 0);
  int parity = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    const XorConstraint x = sample_xor(vars, rng);
    for (Var v : x.vars) ++hits[v];
    parity += x.parity ? 1 : 0;
  }
  for (int h : hits) {
    CHECK(h >= 0.47 * trials);
    CHECK(h <= 0.53 * trials);
  }
  CHECK(parity >= 0.47 * trials);
  CHECK(parity <= 0.53 * trials);

  Rng a(5), b(5);
  CHECK(sample_xor(vars, a) == sample_xor(vars, b));
}

TEST_CASE("split_seed gives distinct, stable streams") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 1000; ++s) seen.insert(split_seed(42, s));
  CHECK(seen.size() == 1000);
  CHECK(split_seed(42, 3) == split_seed(42, 3));
  CHECK(split_seed(1, 0) != split_seed(2, 0));
}

TEST_CASE("amplification_size examples") {
  CHECK(amplification_ratio(2) == Rational(360));
  CHECK(amplification_size(2, 1.0) == 360);
  CHECK(amplification_size(2, 6.4615) == 2327);
  CHECK(amplification_size(3, 1.0) == 15);
  // 2p / (p - 1/2)^2 at p = 41/49, computed here independently
  const Rational p(41, 49);
  const Rational half(1, 2);
  Rational ratio = 2 * p / ((p - half) * (p - half));
  ratio.canonicalize();
  CHECK(amplification_ratio(3) == ratio);
  CHECK_THROWS_AS(amplification_size(1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(amplification_size(2, 0.0), std::invalid_argument);
}

TEST_CASE("xor_counting trivial cases") {
  auto be = make_backend("cdcl");
  Rng rng(3);
  VariableSpace s(1, {3});
  Formula bad(s);
  bad.add_unit(Lit::pos(s.latent(0, 0)));
  bad.add_unit(Lit::neg(s.latent(0, 0)));
  Formula one(s);
  for (std::size_t j = 0; j < 3; ++j) one.add_unit(Lit::pos(s.latent(0, j)));
  for (int l = 0; l <= 3; ++l) {
    for (bool x : {false, true}) {
      Assignment x0(1);
      x0.set(0, x);
      CHECK(*xor_counting(bad, 0, l, x0, *be, rng) == false);
    }
  }
  for (int t = 0; t < 20; ++t) CHECK(*xor_counting(one, 0, 0, Assignment(1), *be, rng) == true);
}

TEST_CASE("xor_counting respects the frozen decision") {
  auto be = make_backend("cdcl");
  VariableSpace s(1, {2});
  Formula f(s);
  f.add_unit(Lit::pos(s.decision(0)));
  Rng rng(1);
  Assignment off(1), on(1);
  on.set(0, true);
  CHECK(*xor_counting(f, 0, 0, off, *be, rng) == false);
  CHECK(*xor_counting(f, 0, 0, on, *be, rng) == true);
}

TEST_CASE("xor_counting single-shot bound on a full cube") {
  auto be = make_backend("cdcl");
  const Formula f = pinned(0, 6, 6);
  const double p = 5.0 / 9.0;
  const int trials = 2000;
  Rng rng(2024);
  int yes = 0;
  for (int t = 0; t < trials; ++t) yes += *xor_counting(f, 0, 2, Assignment(0), *be, rng) ? 1 : 0;
  CHECK(static_cast<double>(yes) / trials >= p - three_sigma(p, trials));
}

TEST_CASE("amplified query: majority semantics are exact") {
  // n = 1, |y| = 2, m = 3: projected models of psi over (x, copies) must be
  // exactly the points where more than half of the copies hold.
  VariableSpace s(1, {2});
  Formula f(s);
  f.add_clause({Lit::pos(s.decision(0)), Lit::pos(s.latent(0, 0))});
  f.add_clause({Lit::neg(s.latent(0, 0)), Lit::neg(s.latent(0, 1))});
  for (int l : {0, 1, 2}) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      Rng rng(seed);
      AmplifyOptions opt;
      opt.m_override = 3;
      opt.keep_copies = true;
      const AmplifiedQuery q = build_amplified(f, 0, l, 2, 1.0, rng, opt);
      REQUIRE(q.m == 3);
      REQUIRE(q.copies.size() == 3);
      std::vector<Var> proj{s.decision(0)};
      for (const auto& c : q.copy_latents) proj.insert(proj.end(), c.begin(), c.end());

      std::uint64_t expect = 0;
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << proj.size()); ++bits) {
        Assignment a(q.psi.space().total());
        for (std::size_t t = 0; t < proj.size(); ++t) a.set(proj[t], (bits >> t) & 1);
        int good = 0;
        for (const Formula& c : q.copies) good += testing::holds(c, a) ? 1 : 0;
        expect += good >= 2 ? 1 : 0;
      }
      CHECK(count_models(q.psi, proj) == expect);
    }
  }
}

TEST_CASE("amplified query: copies hash disjoint latents") {
  const Formula f = pinned(2, 4, 4);
  Rng rng(9);
  AmplifyOptions opt;
  opt.m_override = 25;
  opt.keep_copies = true;
  const AmplifiedQuery q = build_amplified(f, 0, 3, 2, 1.0, rng, opt);
  std::set<Var> used;
  for (std::size_t j = 0; j < q.m; ++j) {
    const std::set<Var> mine(q.copy_latents[j].begin(), q.copy_latents[j].end());
    CHECK(mine.size() == 4);
    for (const XorConstraint& x : q.copies[j].xors()) {
      for (Var v : x.vars) CHECK(mine.count(v) == 1);
    }
    for (Var v : mine) CHECK(used.insert(v).second);
  }
  CHECK(q.psi.cards().size() == 1);
  CHECK(q.psi.cards()[0].bound == 13);
}

TEST_CASE("amplified query: unsatisfiable f stays unsatisfiable") {
  auto be = make_backend("cdcl");
  VariableSpace s(1, {2});
  Formula f(s);
  f.add_unit(Lit::pos(s.latent(0, 0)));
  f.add_unit(Lit::neg(s.latent(0, 0)));
  for (std::size_t m : {1, 3, 7}) {
    Rng rng(m);
    AmplifyOptions opt;
    opt.m_override = m;
    const AmplifiedQuery q = build_amplified(f, 0, 1, 2, 1.0, rng, opt);
    CHECK(solve(q.psi, *be).status == SolveStatus::Unsat);
  }
}

TEST_CASE("amplified query: success rate at tau = 3") {
  auto be = make_backend("cdcl");
  const Formula f = pinned(0, 4, 4);
  const int trials = 200;
  const double p = 1 - std::exp(-3.0);
  int yes = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(split_seed(77, t));
    const AmplifiedQuery q = build_amplified(f, 0, 2, 2, 3.0, rng);
    CHECK(q.m == 1080);
    yes += solve(q.psi, *be).status == SolveStatus::Sat ? 1 : 0;
  }
  CHECK(static_cast<double>(yes) / trials >= p - three_sigma(p, trials));
}

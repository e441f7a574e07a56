#pragma once

#include <random>
#include <vector>

#include "xsmoo/exact.hpp"
#include "xsmoo/problem.hpp"

namespace testing {

// k = 2, random 3-literal clauses mixing one decision with two latents.
inline xsmoo::SmooProblem random_unweighted(std::size_t n, std::size_t ysize, std::size_t clauses,
                                            std::mt19937_64& rng) {
  using namespace xsmoo;
  VariableSpace s(n, {ysize, ysize});
  std::vector<Formula> objs;
  for (std::size_t i = 0; i < 2; ++i) {
    Formula f(s);
    for (std::size_t c = 0; c < clauses; ++c) {
      f.add_clause({Lit(s.decision(rng() % n), rng() & 1), Lit(s.latent(i, rng() % ysize), rng() & 1),
                    Lit(s.latent(i, rng() % ysize), rng() & 1)});
    }
    objs.push_back(f);
  }
  return SmooProblem::unweighted(s, objs, Formula(s));
}

// Positive weights over (one decision, whole latent block); hard formula is
// a tautology so L > 0. Bounds are the exact min and max.
inline xsmoo::SmooProblem random_weighted(std::size_t n, std::size_t ysize, std::mt19937_64& rng,
                                          bool with_hard = false) {
  using namespace xsmoo;
  VariableSpace s(n, {ysize, ysize});
  std::vector<WeightedObjective> objs;
  for (std::size_t i = 0; i < 2; ++i) {
    WeightedObjective w;
    w.index = i;
    w.hard = Formula(s);
    if (with_hard) {
      w.hard.add_clause({Lit(s.decision(rng() % n), rng() & 1), Lit(s.latent(i, rng() % ysize), rng() & 1)});
    }
    WeightFactor f;
    f.scope.push_back(s.decision(i % n));
    for (std::size_t j = 0; j < ysize; ++j) f.scope.push_back(s.latent(i, j));
    for (std::size_t e = 0; e < (std::size_t{1} << f.scope.size()); ++e) {
      Rational v(static_cast<long>(1 + rng() % 12), 4);
      v.canonicalize();
      f.table.push_back(v);
    }
    w.factors.push_back(f);
    w.lower = 0;
    w.upper = 1;
    const auto [lo, hi] = exact_bounds(w);
    w.lower = lo;
    w.upper = hi > lo ? hi : lo + 1;
    objs.push_back(std::move(w));
  }
  return SmooProblem::weighted(s, objs, Formula(s));
}

}  // namespace testing

#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "xsmoo/formula.hpp"

namespace testing {

using xsmoo::Assignment;
using xsmoo::Formula;
using xsmoo::Lit;
using xsmoo::Var;

// Own evaluator so tests do not lean on the library's.
inline bool holds(const Formula& f, const Assignment& a) {
  for (const auto& c : f.clauses()) {
    bool any = false;
    for (Lit l : c) any = any || (a[l.var()] != l.negated());
    if (!any) return false;
  }
  for (const auto& x : f.xors()) {
    int p = 0;
    for (Var v : x.vars) p ^= a[v] ? 1 : 0;
    if ((p == 1) != x.parity) return false;
  }
  for (const auto& c : f.cards()) {
    std::size_t k = 0;
    for (Lit l : c.lits) k += (a[l.var()] != l.negated()) ? 1 : 0;
    if (k < c.bound) return false;
  }
  return true;
}

// Number of distinct projections of models, by full enumeration.
inline std::uint64_t brute_count(const Formula& f, const std::vector<Var>& proj) {
  const std::size_t n = f.space().total();
  std::set<std::vector<bool>> seen;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    Assignment a = Assignment::from_bits(bits, n);
    if (!holds(f, a)) continue;
    std::vector<bool> key;
    for (Var v : proj) key.push_back(a[v]);
    seen.insert(key);
  }
  return seen.size();
}

inline bool brute_sat(const Formula& f) {
  const std::size_t n = f.space().total();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    if (holds(f, Assignment::from_bits(bits, n))) return true;
  }
  return false;
}

inline Formula random_formula(std::size_t vars, std::size_t clauses, std::size_t xors, std::size_t cards,
                              std::mt19937_64& rng) {
  Formula f(xsmoo::VariableSpace(vars, {}));
  std::uniform_int_distribution<Var> pick(0, static_cast<Var>(vars - 1));
  for (std::size_t i = 0; i < clauses; ++i) {
    xsmoo::Clause c;
    for (int j = 0; j < 3; ++j) c.push_back(Lit(pick(rng), rng() & 1));
    f.add_clause(c);
  }
  for (std::size_t i = 0; i < xors; ++i) {
    xsmoo::XorConstraint x;
    for (Var v = 0; v < vars; ++v) {
      if (rng() & 1) x.vars.push_back(v);
    }
    x.parity = rng() & 1;
    f.add_xor(x);
  }
  for (std::size_t i = 0; i < cards; ++i) {
    xsmoo::CardinalityConstraint c;
    const std::size_t len = 2 + rng() % 4;
    for (std::size_t j = 0; j < len; ++j) c.lits.push_back(Lit(pick(rng), rng() & 1));
    c.bound = rng() % (len + 1);
    f.add_cardinality(c);
  }
  return f;
}

}  // namespace testing

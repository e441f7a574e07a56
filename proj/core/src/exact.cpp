#include "xsmoo/exact.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>

#include "xsmoo/errors.hpp"
#include "xsmoo/sat.hpp"
#include "xsmoo/solver.hpp"

namespace xsmoo {

std::uint64_t exact_limit() { return env_limit("XSMOO_EXACT_LIMIT", std::size_t{1} << 24); }

namespace {

void require_budget(std::size_t bits, const char* what) {
  if (bits >= 63 || (std::uint64_t{1} << bits) > exact_limit()) {
    throw LimitExceeded(std::string("exact reference: ") + what + " needs 2^" + std::to_string(bits) +
                        " assignments, limit is " + std::to_string(exact_limit()));
  }
}

// Decides f under a partial assignment; enumeration when every variable is
// pinned and f has no aux, search otherwise.
class Extender {
 public:
  explicit Extender(const Formula& f) : f_(f) {
    if (f.space().aux_count() > 0) {
      solver_ = std::make_unique<CdclSolver>(f.space().total());
      solver_->add_formula(f);
    }
  }

  // Number of assignments to `rest` that, together with `fixed`, extend to a model.
  std::uint64_t count(std::vector<Lit>& fixed, const std::vector<Var>& rest) {
    if (!solver_) return enumerate(fixed, rest);
    return dfs(fixed, rest, 0);
  }

 private:
  std::uint64_t enumerate(const std::vector<Lit>& fixed, const std::vector<Var>& rest) {
    Assignment a(f_.space().total());
    for (Lit l : fixed) a.set(l.var(), !l.negated());
    std::uint64_t n = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << rest.size()); ++bits) {
      for (std::size_t t = 0; t < rest.size(); ++t) a.set(rest[t], (bits >> t) & 1);
      n += evaluate(f_, a) ? 1 : 0;
    }
    return n;
  }

  std::uint64_t dfs(std::vector<Lit>& fixed, const std::vector<Var>& rest, std::size_t depth) {
    if (solver_->solve(fixed) != SolveStatus::Sat) return 0;
    if (depth == rest.size()) return 1;
    std::uint64_t n = 0;
    for (bool neg : {false, true}) {
      fixed.push_back(Lit(rest[depth], neg));
      n += dfs(fixed, rest, depth + 1);
      fixed.pop_back();
    }
    return n;
  }

  const Formula& f_;
  std::unique_ptr<CdclSolver> solver_;
};

std::vector<Lit> decision_lits(const VariableSpace& s, const Assignment& x) {
  if (x.size() < s.decision_count()) throw std::invalid_argument("decision assignment too short");
  std::vector<Lit> out;
  for (std::size_t j = 0; j < s.decision_count(); ++j) out.push_back(Lit(s.decision(j), !x[static_cast<Var>(j)]));
  return out;
}

// Sum over assignments a of `outer` of weight(a) * #extensions over the rest of the block.
template <typename Weight>
Rational block_sum(const Formula& f, std::size_t block, const Assignment& x, const std::vector<Var>& outer,
                   Weight&& weight) {
  const VariableSpace& s = f.space();
  std::vector<Var> rest;
  for (Var v : s.block_vars(block)) {
    if (!std::binary_search(outer.begin(), outer.end(), v)) rest.push_back(v);
  }
  require_budget(outer.size(), "latent enumeration");
  if (s.aux_count() == 0) require_budget(outer.size() + rest.size(), "latent enumeration");
  Extender ext(f);
  std::vector<Lit> fixed = decision_lits(s, x);
  const std::size_t base = fixed.size();
  Rational total = 0;
  Assignment a(s.total());
  for (std::size_t j = 0; j < s.decision_count(); ++j) a.set(s.decision(j), x[static_cast<Var>(j)]);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << outer.size()); ++bits) {
    fixed.resize(base);
    for (std::size_t t = 0; t < outer.size(); ++t) {
      const bool v = (bits >> t) & 1;
      a.set(outer[t], v);
      fixed.push_back(Lit(outer[t], !v));
    }
    const Rational w = weight(a);
    if (w == 0) continue;
    const std::uint64_t n = ext.count(fixed, rest);
    if (n != 0) total += w * Rational(static_cast<unsigned long>(n));
  }
  return total;
}

// Scope variables inside the latent block; decisions are fixed by x.
std::vector<Var> latent_scope(const WeightedObjective& obj) {
  std::vector<Var> out;
  for (Var v : obj.joint_scope()) {
    if (obj.hard.space().classify(v).kind == VarKind::Latent) out.push_back(v);
  }
  return out;
}

Rational weighted_sum(const WeightedObjective& obj, const Assignment& x) {
  const std::vector<Var> scope = latent_scope(obj);
  return block_sum(obj.hard, obj.index, x, scope, [&](const Assignment& a) { return obj.factor_product(a); });
}

Rational unweighted_count(const Formula& f, std::size_t block, const Assignment& x) {
  const std::vector<Var> all = f.space().block_vars(block);
  return block_sum(f, block, x, all, [](const Assignment&) { return Rational(1); });
}

bool decision_feasible(const SmooProblem& p, const Assignment& x) {
  const VariableSpace& s = p.decision_constraints().space();
  Assignment a(s.total());
  for (std::size_t j = 0; j < s.decision_count(); ++j) a.set(s.decision(j), x[static_cast<Var>(j)]);
  if (s.aux_count() == 0) return evaluate(p.decision_constraints(), a);
  CdclSolver solver(s.total());
  solver.add_formula(p.decision_constraints());
  const std::vector<Lit> lits = decision_lits(s, x);
  return solver.solve(lits) == SolveStatus::Sat;
}

// Largest integer e with 2^e <= v, for v > 0.
long floor_log2(const Rational& v) {
  const mpz_class q = floor(v);
  if (q > 0) return static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2)) - 1;
  long e = -1;
  while (pow2(e) > v) --e;
  return e;
}

}  // namespace

std::vector<Rational> exact_objectives(const SmooProblem& problem, const Assignment& x) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < problem.objective_count(); ++i) {
    if (problem.is_weighted()) {
      out.push_back(weighted_sum(problem.weighted_objectives()[i], x));
    } else {
      out.push_back(unweighted_count(problem.objective_formula(i), i, x));
    }
  }
  return out;
}

Rational exact_cost(const SmooProblem& problem, const Assignment& x) {
  Rational c = 0;
  for (std::size_t j = 0; j < problem.costs().size(); ++j) {
    if (x[static_cast<Var>(j)]) c += problem.costs()[j];
  }
  return c;
}

std::vector<ScoredDecision> score_all(const SmooProblem& problem) {
  const std::size_t n = problem.decision_count();
  require_budget(n, "decision enumeration");
  std::vector<ScoredDecision> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    Assignment x = Assignment::from_bits(bits, n);
    if (!decision_feasible(problem, x)) continue;
    ScoredDecision d{x, exact_objectives(problem, x), std::nullopt};
    if (problem.has_costs()) d.cost = exact_cost(problem, x);
    out.push_back(std::move(d));
  }
  return out;
}

Frontier exact_pareto(const SmooProblem& problem) {
  std::vector<FrontierEntry> all;
  for (ScoredDecision& d : score_all(problem)) all.push_back({std::move(d.x), std::move(d.scores), d.cost});
  return strict_nondominated(all);
}

Frontier exact_threshold_frontier(const SmooProblem& problem) {
  // Grid points satisfiable by x form the down-set of floor(log2 F(x)); the
  // maximal ones are the maximal such exponent vectors.
  struct Keyed {
    ScoreVector key;
    FrontierEntry entry;
  };
  std::vector<Keyed> cands;
  for (ScoredDecision& d : score_all(problem)) {
    bool reachable = true;
    ScoreVector key;
    for (const Rational& v : d.scores) {
      if (v <= 0) {
        reachable = false;
        break;
      }
      key.push_back(Rational(floor_log2(v)));
    }
    if (!reachable) continue;
    if (d.cost) key.push_back(-*d.cost);
    cands.push_back({std::move(key), {std::move(d.x), std::move(d.scores), d.cost}});
  }
  Frontier out;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < cands.size() && keep; ++j) {
      if (i == j) continue;
      if (cands[j].key == cands[i].key) {
        keep = j > i;
      } else if (dominates(cands[j].key, cands[i].key)) {
        keep = false;
      }
    }
    if (keep) out.push_back(cands[i].entry);
  }
  return out;
}

std::pair<Rational, Rational> exact_bounds(const WeightedObjective& obj) {
  const VariableSpace& s = obj.hard.space();
  const std::size_t n = s.decision_count();
  const std::vector<Var> outer = latent_scope(obj);
  std::vector<Var> rest;
  for (Var v : s.block_vars(obj.index)) {
    if (!std::binary_search(outer.begin(), outer.end(), v)) rest.push_back(v);
  }
  require_budget(n + outer.size(), "bound scan");
  if (s.aux_count() == 0) require_budget(n + outer.size() + rest.size(), "bound scan");
  const std::uint64_t cube = std::uint64_t{1} << rest.size();
  Extender ext(obj.hard);
  std::optional<Rational> lo, hi;
  auto see = [&](const Rational& v) {
    if (!lo || v < *lo) lo = v;
    if (!hi || v > *hi) hi = v;
  };
  Assignment a(s.total());
  std::vector<Lit> fixed;
  for (std::uint64_t xb = 0; xb < (std::uint64_t{1} << n); ++xb) {
    for (std::size_t j = 0; j < n; ++j) a.set(s.decision(j), (xb >> j) & 1);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << outer.size()); ++bits) {
      fixed.clear();
      for (std::size_t j = 0; j < n; ++j) fixed.push_back(Lit(s.decision(j), ((xb >> j) & 1) == 0));
      for (std::size_t t = 0; t < outer.size(); ++t) {
        const bool v = (bits >> t) & 1;
        a.set(outer[t], v);
        fixed.push_back(Lit(outer[t], !v));
      }
      const std::uint64_t good = ext.count(fixed, rest);
      if (good > 0) see(obj.factor_product(a));
      if (good < cube) see(Rational(0));
    }
  }
  return {*lo, *hi};
}

mpz_class embedded_count(const WeightedObjective& obj, int b, const Assignment& x) {
  const EmbeddedObjective e = embed_weighted(obj, b);
  std::vector<Var> outer;
  for (Var v : e.scope) {
    if (e.formula.space().classify(v).kind == VarKind::Latent) outer.push_back(v);
  }
  outer.insert(outer.end(), e.z.begin(), e.z.end());
  std::sort(outer.begin(), outer.end());
  const Rational n = block_sum(e.formula, obj.index, x, outer, [](const Assignment&) { return Rational(1); });
  return n.get_num();
}

bool check_weighted_bounds(const WeightedObjective& obj, int b, const Assignment& x) {
  const Rational sum = weighted_sum(obj, x);
  const Rational count(embedded_count(obj, b, x));
  const Rational cube = pow2(static_cast<long>(obj.hard.space().block_size(obj.index)));
  const Rational step = (obj.upper - obj.lower) / pow2(b);
  const Rational low = cube * obj.lower + step * count;
  const Rational high = low + cube * step;
  return low <= sum && sum < high;
}

}  // namespace xsmoo

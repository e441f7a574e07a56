#include "xsmoo/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "xsmoo/errors.hpp"

namespace xsmoo {

namespace {

void copy_into(const Formula& f, const std::vector<Var>& map, Formula& out) {
  for (const Clause& c : f.clauses()) {
    Clause r;
    r.reserve(c.size());
    for (Lit l : c) r.emplace_back(map[l.var()], l.negated());
    out.add_clause(std::move(r));
  }
  for (const XorConstraint& x : f.xors()) {
    XorConstraint r{{}, x.parity};
    for (Var v : x.vars) r.vars.push_back(map[v]);
    out.add_xor(std::move(r));
  }
  for (const CardinalityConstraint& c : f.cards()) {
    CardinalityConstraint r{{}, c.bound};
    for (Lit l : c.lits) r.lits.emplace_back(map[l.var()], l.negated());
    out.add_cardinality(std::move(r));
  }
}

// Map from f's ids into `out`, shifting latent j of block k to slot
// offset[k] + j and giving f's aux fresh ids (same owners) in `out`.
std::vector<Var> relayout_map(const Formula& f, const std::vector<std::size_t>& offset, Formula& out) {
  const VariableSpace& s = f.space();
  std::vector<Var> map(s.total(), 0);
  for (std::size_t j = 0; j < s.decision_count(); ++j) map[s.decision(j)] = out.space().decision(j);
  for (std::size_t k = 0; k < s.block_count(); ++k) {
    for (std::size_t j = 0; j < s.block_size(k); ++j) {
      if (offset[k] + j < out.space().block_size(k)) map[s.latent(k, j)] = out.space().latent(k, offset[k] + j);
    }
  }
  for (const auto& range : s.aux_ranges()) {
    const Var first = out.fresh(range.count, range.owner);
    for (std::size_t j = 0; j < range.count; ++j) map[range.first + j] = first + static_cast<Var>(j);
  }
  return map;
}

int ceil_guarded(double v) { return static_cast<int>(std::ceil(v - 1e-9)); }

std::vector<std::pair<Rational, Rational>> bounds_of(const SmooProblem& p) {
  std::vector<std::pair<Rational, Rational>> out;
  for (const WeightedObjective& w : p.weighted_objectives()) out.emplace_back(w.lower, w.upper);
  return out;
}

}  // namespace

std::vector<GridPoint> build_grid(const SmooProblem& problem) {
  const std::vector<std::size_t>& sizes = problem.space().latent_sizes();
  std::vector<GridPoint> out;
  std::vector<int> cur(sizes.size(), 0);
  for (;;) {
    out.push_back({cur});
    std::size_t i = sizes.size();
    while (i > 0) {
      --i;
      if (static_cast<std::size_t>(cur[i]) < sizes[i]) {
        ++cur[i];
        break;
      }
      cur[i] = 0;
      if (i == 0) return out;
    }
    if (sizes.empty()) return out;
  }
}

std::pair<Frontier, RunReport> xor_smoo(const SmooProblem& problem, const SolveConfig& cfg) {
  if (problem.is_weighted()) throw std::invalid_argument("xor_smoo expects an unweighted problem");
  if (!(cfg.delta > 0 && cfg.delta < 1)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (cfg.epsilon < 3) throw std::invalid_argument("epsilon must be at least 3");
  make_backend(cfg.backend);  // reject unknown names before spawning workers
  const auto start = std::chrono::steady_clock::now();

  RunReport rep;
  const std::size_t k = problem.objective_count();
  rep.objectives = k;
  rep.decisions = problem.decision_count();
  rep.latent_sizes = problem.space().latent_sizes();
  const std::vector<GridPoint> grid = build_grid(problem);
  rep.grid_size = grid.size();
  rep.grid_size_product = 1;
  for (std::size_t s : rep.latent_sizes) rep.grid_size_product *= s;
  rep.delta = cfg.delta;
  rep.epsilon = cfg.epsilon;
  rep.l_star = cfg.epsilon - 1;
  rep.eta = cfg.delta / static_cast<double>(grid.size());
  rep.tau = confidence_tau(k, rep.decisions, rep.eta);
  const std::size_t m = cfg.m_override ? *cfg.m_override : amplification_size(rep.l_star, rep.tau);
  rep.m.assign(k, m);
  rep.seed = cfg.seed;
  rep.backend = cfg.backend;
  rep.strategy = cfg.strategy;
  rep.time_limit_s = cfg.time_limit_s;
  rep.jobs = cfg.jobs ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
  rep.jobs = std::min(rep.jobs, grid.size());
  rep.outcomes.resize(grid.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto work = [&] {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= grid.size()) return;
      try {
        auto backend = make_backend(cfg.backend);
        OracleQuery q;
        q.exponents = grid[j].exponents;
        q.l_star = rep.l_star;
        q.eta = rep.eta;
        q.seed = split_seed(cfg.seed, j);
        q.limits.time_limit_s = cfg.time_limit_s;
        q.amplify.m_override = m;
        q.strategy = cfg.strategy;
        const OracleResult r = xor_sat(problem, q, *backend);
        PointOutcome& o = rep.outcomes[j];
        o.point = grid[j];
        o.status = r.status;
        o.x = r.x;
        o.seed = q.seed;
      } catch (...) {
        std::lock_guard<std::mutex> g(failure_lock);
        if (!failure) failure = std::current_exception();
        next.store(grid.size());
        return;
      }
    }
  };
  if (rep.jobs <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < rep.jobs; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<FrontierEntry> entries;
  for (const PointOutcome& o : rep.outcomes) {
    switch (o.status) {
      case OracleStatus::Sat: {
        ++rep.sat;
        FrontierEntry e{o.x, o.point.thresholds(), std::nullopt};
        if (problem.has_costs()) {
          Rational c = 0;
          for (std::size_t j = 0; j < problem.decision_count(); ++j) {
            if (o.x[static_cast<Var>(j)]) c += problem.costs()[j];
          }
          e.cost = c;
        }
        entries.push_back(std::move(e));
        break;
      }
      case OracleStatus::Unsat:
        ++rep.unsat;
        break;
      case OracleStatus::Indeterminate:
        ++rep.indeterminate;
        break;
    }
  }
  rep.all_indeterminate = rep.indeterminate == grid.size();
  rep.frontier = prune_nondominated(entries);
  rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {rep.frontier, rep};
}

std::size_t scope_limit() { return env_limit("XSMOO_SCOPE_LIMIT", 16); }

EmbeddedObjective embed_weighted(const WeightedObjective& obj, int b) {
  if (b < 0 || b > 30) throw std::invalid_argument("counter width b must lie in [0, 30]");
  if (!(obj.upper > obj.lower)) throw std::invalid_argument("embedding needs upper > lower");
  const VariableSpace& src = obj.hard.space();
  const std::size_t i = obj.index;
  if (i >= src.block_count()) throw std::invalid_argument("objective index outside the latent blocks");
  const std::vector<Var> scope_src = obj.joint_scope();
  if (scope_src.size() > scope_limit()) {
    throw LimitExceeded("joint factor scope has " + std::to_string(scope_src.size()) +
                        " variables, TABLE limit is " + std::to_string(scope_limit()));
  }

  std::vector<std::size_t> sizes = src.latent_sizes();
  for (std::size_t& s : sizes) s += static_cast<std::size_t>(b);
  EmbeddedObjective e;
  e.source = obj;
  e.b = b;
  e.formula = Formula(VariableSpace(src.decision_count(), sizes));
  const std::vector<Var> map = relayout_map(obj.hard, std::vector<std::size_t>(sizes.size(), 0), e.formula);
  copy_into(obj.hard, map, e.formula);
  const VariableSpace& dst = e.formula.space();
  for (int t = 0; t < b; ++t) e.z.push_back(dst.latent(i, src.block_size(i) + static_cast<std::size_t>(t)));
  for (Var v : scope_src) e.scope.push_back(map[v]);

  const mpz_class cap = mpz_class(1) << b;
  const Rational span = obj.upper - obj.lower;
  Assignment a(src.total());
  for (std::uint64_t j = 0; j < (std::uint64_t{1} << scope_src.size()); ++j) {
    for (std::size_t t = 0; t < scope_src.size(); ++t) a.set(scope_src[t], (j >> t) & 1);
    const Rational r = (obj.factor_product(a) - obj.lower) / span * Rational(cap);
    mpz_class w = floor(r);
    if (w < 0) w = 0;
    if (w > cap) w = cap;
    e.levels.push_back(w);
    if (w == cap) continue;

    // Every clause starts with literals that are false exactly at scope assignment j.
    Clause prefix;
    for (std::size_t t = 0; t < e.scope.size(); ++t) prefix.push_back(Lit(e.scope[t], ((j >> t) & 1) != 0));
    if (w == 0) {
      e.formula.add_clause(prefix);
      continue;
    }
    // differ[q] is true iff z_q differs from bit q of w.
    std::vector<Lit> differ;
    for (int q = 0; q < b; ++q) differ.push_back(Lit(e.z[q], mpz_tstbit(w.get_mpz_t(), q) != 0));
    Clause ne = prefix;
    ne.insert(ne.end(), differ.begin(), differ.end());
    e.formula.add_clause(std::move(ne));
    for (int p = 0; p < b; ++p) {
      if (mpz_tstbit(w.get_mpz_t(), p) != 0) continue;
      // forbid z_p = 1 with all higher bits equal to w
      Clause c = prefix;
      c.push_back(Lit::neg(e.z[p]));
      for (int q = p + 1; q < b; ++q) c.push_back(differ[q]);
      e.formula.add_clause(std::move(c));
    }
  }
  return e;
}

SmooProblem build_pseudo(const SmooProblem& weighted, int T, int b) {
  if (!weighted.is_weighted()) throw std::invalid_argument("build_pseudo expects a weighted problem");
  if (T < 1) throw std::invalid_argument("T must be at least 1");
  const VariableSpace& src = weighted.space();
  const std::size_t k = weighted.objective_count();
  std::vector<std::size_t> width(k), sizes(k);
  for (std::size_t i = 0; i < k; ++i) {
    width[i] = src.block_size(i) + static_cast<std::size_t>(b);
    sizes[i] = static_cast<std::size_t>(T) * width[i];
  }
  const VariableSpace space(src.decision_count(), sizes);
  std::vector<Formula> objectives;
  for (std::size_t i = 0; i < k; ++i) {
    const EmbeddedObjective e = embed_weighted(weighted.weighted_objectives()[i], b);
    Formula g(space);
    for (int t = 0; t < T; ++t) {
      std::vector<std::size_t> offset(k, 0);
      offset[i] = static_cast<std::size_t>(t) * width[i];
      const std::vector<Var> map = relayout_map(e.formula, offset, g);
      copy_into(e.formula, map, g);
    }
    objectives.push_back(std::move(g));
  }
  Formula dc(space);
  const std::vector<Var> map = relayout_map(weighted.decision_constraints(), std::vector<std::size_t>(k, 0), dc);
  copy_into(weighted.decision_constraints(), map, dc);
  return SmooProblem::unweighted(space, std::move(objectives), std::move(dc), weighted.costs());
}

std::pair<int, int> params_for_gamma(double gamma, const std::vector<std::pair<Rational, Rational>>& bounds) {
  if (!(gamma > 1) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be greater than 1");
  if (bounds.empty()) throw std::invalid_argument("params_for_gamma needs at least one objective");
  const int T = std::max(1, ceil_guarded(10.0 / std::log2(gamma)));
  const double shrink = std::log2(gamma - std::sqrt(gamma));
  double worst = -INFINITY;
  for (const auto& [lower, upper] : bounds) {
    if (lower <= 0) throw std::invalid_argument("target-gamma parameters need positive lower bounds");
    if (!(upper > lower)) throw std::invalid_argument("weighted objective needs upper > lower");
    worst = std::max(worst, std::log2(to_double(upper / lower) - 1.0));
  }
  const int b = std::max(0, ceil_guarded(worst - shrink));
  return {T, b};
}

double zeta(int T, int b, const std::vector<std::pair<Rational, Rational>>& bounds) {
  if (T < 1) throw std::invalid_argument("T must be at least 1");
  double worst = 0;
  for (const auto& [lower, upper] : bounds) {
    if (lower <= 0) return INFINITY;
    const double ratio = to_double((upper - lower) / lower) / (std::exp2(5.0 / T) * std::exp2(b));
    worst = std::max(worst, std::log2(1 + ratio));
  }
  return worst;
}

std::pair<Frontier, RunReport> w_xor_smoo(const SmooProblem& problem, const SolveConfig& cfg) {
  if (!problem.is_weighted()) throw std::invalid_argument("w_xor_smoo expects a weighted problem");
  const auto bounds = bounds_of(problem);
  WeightedParams wp;
  if (cfg.gamma) {
    if (cfg.T || cfg.b) throw std::invalid_argument("give either gamma or (T, b), not both");
    std::tie(wp.T, wp.b) = params_for_gamma(*cfg.gamma, bounds);
    wp.gamma = cfg.gamma;
  } else {
    if (!cfg.T || !cfg.b) throw std::invalid_argument("weighted solving needs gamma or both T and b");
    if (*cfg.T < 1 || *cfg.b < 0) throw std::invalid_argument("need T >= 1 and b >= 0");
    wp.T = *cfg.T;
    wp.b = *cfg.b;
  }
  wp.zeta = zeta(wp.T, wp.b, bounds);
  wp.factor = std::exp2(5.0 / wp.T + wp.zeta);
  for (const auto& [l, u] : bounds) {
    wp.lower.push_back(l);
    wp.upper.push_back(u);
  }

  const auto start = std::chrono::steady_clock::now();
  const SmooProblem pseudo = build_pseudo(problem, wp.T, wp.b);
  SolveConfig inner = cfg;
  inner.epsilon = 3;
  auto [frontier, rep] = xor_smoo(pseudo, inner);
  for (const FrontierEntry& e : frontier) {
    std::vector<double> est;
    for (std::size_t i = 0; i < bounds.size(); ++i) {
      const double base = std::exp2(static_cast<double>(problem.space().block_size(i))) * to_double(bounds[i].first);
      const double step = to_double(bounds[i].second - bounds[i].first) / std::exp2(wp.b);
      est.push_back(base + step * std::pow(to_double(e.p[i]), 1.0 / wp.T));
    }
    wp.estimates.push_back(std::move(est));
  }
  rep.weighted = std::move(wp);
  rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {frontier, rep};
}

}  // namespace xsmoo

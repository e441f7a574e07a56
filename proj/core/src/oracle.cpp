#include "xsmoo/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "xsmoo/dimacs.hpp"

namespace xsmoo {

double confidence_tau(std::size_t k, std::size_t n, double eta) {
  if (k < 1) throw std::invalid_argument("confidence_tau needs k >= 1");
  if (!(eta > 0 && eta < 1)) throw std::invalid_argument("eta must lie in (0, 1)");
  const double a = std::log(static_cast<double>(k));
  const double b = static_cast<double>(n) * std::log(2.0);
  return std::max(a, b) + std::log(2.0 / eta);
}

std::string to_string(OracleStatus s) {
  switch (s) {
    case OracleStatus::Sat:
      return "sat";
    case OracleStatus::Unsat:
      return "unsat";
    case OracleStatus::Indeterminate:
      return "indeterminate";
  }
  return "unknown";
}

std::string to_string(OracleStrategy s) { return s == OracleStrategy::Monolithic ? "monolithic" : "decomposed"; }

OracleStrategy parse_strategy(const std::string& name) {
  if (name == "monolithic") return OracleStrategy::Monolithic;
  if (name == "decomposed") return OracleStrategy::Decomposed;
  throw std::invalid_argument("unknown oracle strategy '" + name + "'");
}

namespace {

constexpr std::size_t kEnumerateLatent = 16;
constexpr std::size_t kEnumerateDecision = 20;

struct Clock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double limit = 0;
  bool expired() const {
    return limit > 0 && std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > limit;
  }
};

// One objective's hashed copies, with XOR rows over the original latent ids.
class CopySet {
 public:
  CopySet(const Formula& f, std::size_t block, int l, std::size_t m, Rng& rng) : f_(f), m_(m), l_(l) {
    const VariableSpace& space = f.space();
    latent_ = space.block_vars(block);
    has_aux_ = space.total() > space.base_count();
    enumerate_ = latent_.size() <= kEnumerateLatent;
    if (enumerate_) {
      masks_.reserve(m * static_cast<std::size_t>(l));
      for (std::size_t j = 0; j < m * static_cast<std::size_t>(l); ++j) {
        masks_.push_back(sample_xor_mask(latent_.size(), rng));
      }
    } else {
      rows_.resize(m);
      for (std::size_t j = 0; j < m; ++j) {
        for (int t = 0; t < l; ++t) rows_[j].push_back(sample_xor(latent_, rng));
      }
      solvers_.resize(m);
    }
  }

  // Prepares per-x state; must precede sat().
  void fix(const Assignment& x) {
    x_ = x;
    if (!enumerate_) return;
    const VariableSpace& space = f_.space();
    Assignment a(space.total());
    for (std::size_t j = 0; j < space.decision_count(); ++j) a.set(space.decision(j), x[static_cast<Var>(j)]);
    models_.clear();
    if (has_aux_) {
      // aux only needs an extension: search the latent tree with x fixed
      if (!extender_) {
        extender_ = std::make_unique<CdclSolver>(space.total());
        extender_->add_formula(f_);
      }
      std::vector<Lit> fixed;
      for (std::size_t j = 0; j < space.decision_count(); ++j) {
        fixed.push_back(Lit(space.decision(j), !x[static_cast<Var>(j)]));
      }
      collect(fixed, 0, 0);
    } else {
      const std::uint64_t total = std::uint64_t{1} << latent_.size();
      for (std::uint64_t bits = 0; bits < total; ++bits) {
        for (std::size_t t = 0; t < latent_.size(); ++t) a.set(latent_[t], ((bits >> t) & 1) != 0);
        if (evaluate(f_, a)) models_.push_back(bits);
      }
    }
    // Bit-slice: columns_[t] holds latent t of every model, one bit per model.
    words_ = (models_.size() + 63) / 64;
    columns_.assign(latent_.size() * words_, 0);
    for (std::size_t r = 0; r < models_.size(); ++r) {
      for (std::size_t t = 0; t < latent_.size(); ++t) {
        if ((models_[r] >> t) & 1) columns_[t * words_ + r / 64] |= std::uint64_t{1} << (r % 64);
      }
    }
    tail_ = models_.size() % 64 == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << (models_.size() % 64)) - 1;
  }

  // Whether copy j is satisfiable under the fixed x. Empty on timeout.
  std::optional<bool> sat(std::size_t j, std::uint64_t seed, const SolveLimits& limits) {
    if (enumerate_) {
      if (models_.empty()) return false;
      alive_.assign(words_, ~std::uint64_t{0});
      alive_.back() &= tail_;
      row_.resize(words_);
      const std::size_t width = static_cast<std::size_t>(l_);
      for (std::size_t r = j * width; r < (j + 1) * width; ++r) {
        const auto [mask, parity] = masks_[r];
        std::fill(row_.begin(), row_.end(), parity ? ~std::uint64_t{0} : 0);
        for (std::uint64_t m = mask; m != 0; m &= m - 1) {
          const std::uint64_t* col = &columns_[static_cast<std::size_t>(std::countr_zero(m)) * words_];
          for (std::size_t w = 0; w < words_; ++w) row_[w] ^= col[w];
        }
        // row_ is now 0 exactly where the model meets the parity
        std::uint64_t any = 0;
        for (std::size_t w = 0; w < words_; ++w) any |= (alive_[w] &= ~row_[w]);
        if (any == 0) return false;
      }
      return true;
    }
    auto& s = solvers_[j];
    if (!s) {
      s = std::make_unique<CdclSolver>(f_.space().total(), split_seed(seed, j));
      s->add_formula(f_);
      for (const XorConstraint& x : rows_[j]) s->add_xor(x.vars, x.parity);
    }
    std::vector<Lit> assume;
    const VariableSpace& space = f_.space();
    for (std::size_t t = 0; t < space.decision_count(); ++t) {
      assume.push_back(Lit(space.decision(t), !x_[static_cast<Var>(t)]));
    }
    const SolveStatus st = s->solve(assume, limits);
    if (st == SolveStatus::Timeout) return std::nullopt;
    return st == SolveStatus::Sat;
  }

  std::size_t m() const { return m_; }

 private:
  void collect(std::vector<Lit>& fixed, std::size_t depth, std::uint64_t bits) {
    if (extender_->solve(fixed) != SolveStatus::Sat) return;
    if (depth == latent_.size()) {
      models_.push_back(bits);
      return;
    }
    for (bool value : {false, true}) {
      fixed.push_back(Lit(latent_[depth], !value));
      collect(fixed, depth + 1, value ? bits | (std::uint64_t{1} << depth) : bits);
      fixed.pop_back();
    }
  }

  const Formula& f_;
  std::size_t m_;
  int l_;
  std::vector<Var> latent_;
  bool has_aux_ = false;
  std::unique_ptr<CdclSolver> extender_;
  std::vector<std::vector<XorConstraint>> rows_;
  bool enumerate_ = false;
  std::vector<std::pair<std::uint64_t, bool>> masks_;
  std::vector<std::uint64_t> models_;
  std::size_t words_ = 0;
  std::uint64_t tail_ = 0;
  std::vector<std::uint64_t> columns_;
  std::vector<std::uint64_t> alive_;
  std::vector<std::uint64_t> row_;
  std::vector<std::unique_ptr<CdclSolver>> solvers_;
  Assignment x_;
};

// Calls visit(x) for every decision assignment satisfying the decision
// constraints, in a deterministic order, until visit returns false.
template <typename Visit>
bool for_each_feasible(const SmooProblem& problem, Visit&& visit, const Clock& clock) {
  const VariableSpace& space = problem.space();
  const std::size_t n = space.decision_count();
  const Formula& dc = problem.decision_constraints();
  if (n <= kEnumerateDecision) {
    Assignment full(space.total());
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      if ((bits & 0x3FF) == 0 && clock.expired()) return false;
      Assignment x = Assignment::from_bits(bits, n);
      for (std::size_t j = 0; j < n; ++j) full.set(space.decision(j), x[static_cast<Var>(j)]);
      if (!evaluate(dc, full)) continue;
      if (!visit(x)) return true;
    }
    return true;
  }
  CdclSolver s(space.total());
  s.add_formula(dc);
  for (;;) {
    if (clock.expired()) return false;
    SolveLimits lim;
    if (clock.limit > 0) {
      lim.time_limit_s = std::max(1e-3, clock.limit - std::chrono::duration<double>(
                                                           std::chrono::steady_clock::now() - clock.start)
                                                           .count());
    }
    const SolveStatus st = s.solve({}, lim);
    if (st == SolveStatus::Timeout) return false;
    if (st == SolveStatus::Unsat) return true;
    const Assignment model = s.model();
    Assignment x(n);
    Clause block;
    for (std::size_t j = 0; j < n; ++j) {
      const bool v = model[space.decision(j)];
      x.set(static_cast<Var>(j), v);
      block.push_back(Lit(space.decision(j), v));
    }
    if (!visit(x)) return true;
    s.add_clause(block);
  }
}

}  // namespace

OracleResult xor_sat(const SmooProblem& problem, const OracleQuery& query, SolverBackend& backend) {
  if (problem.is_weighted()) throw std::invalid_argument("xor_sat expects an unweighted problem");
  const std::size_t k = problem.objective_count();
  if (query.exponents.size() != k) throw std::invalid_argument("one exponent per objective required");
  if (query.l_star < 2) throw std::invalid_argument("l* must be at least 2");
  for (int l : query.exponents) {
    if (l < 0) throw std::invalid_argument("exponents must be nonnegative");
  }

  OracleResult out;
  const std::size_t n = problem.decision_count();
  out.tau = confidence_tau(k, n, query.eta);
  const std::size_t m_default = query.amplify.m_override ? *query.amplify.m_override
                                                         : amplification_size(query.l_star, out.tau);
  out.query_vars = n;
  for (std::size_t i = 0; i < k; ++i) {
    out.m.push_back(m_default);
    out.query_vars += m_default * problem.space().block_size(i);
  }

  const bool materialize = query.strategy == OracleStrategy::Monolithic || query.dump_dimacs;
  Formula conj(problem.space());
  if (materialize) {
    conj.append(problem.decision_constraints());
    for (std::size_t i = 0; i < k; ++i) {
      Rng rng(split_seed(query.seed, i));
      const AmplifiedQuery a = build_amplified(problem.objective_formula(i), i, query.exponents[i], query.l_star,
                                               out.tau, rng, query.amplify);
      conj.append(a.psi);
    }
    out.total_vars = conj.space().total();
    out.constraints = conj.constraint_count();
    if (query.dump_dimacs) out.dimacs = to_dimacs(conj, "oracle query");
  }

  if (query.strategy == OracleStrategy::Monolithic) {
    const SolveOutcome res = solve(conj, backend, split_seed(query.seed, k), query.limits);
    out.stats = res.stats;
    switch (res.status) {
      case SolveStatus::Sat:
        out.status = OracleStatus::Sat;
        out.x = res.model.prefix(n);
        break;
      case SolveStatus::Unsat:
        out.status = OracleStatus::Unsat;
        break;
      case SolveStatus::Timeout:
        out.status = OracleStatus::Indeterminate;
        break;
    }
    return out;
  }

  // Same rng streams and draw order as build_amplified.
  std::vector<std::unique_ptr<CopySet>> sets;
  for (std::size_t i = 0; i < k; ++i) {
    Rng rng(split_seed(query.seed, i));
    sets.push_back(std::make_unique<CopySet>(problem.objective_formula(i), i, query.exponents[i], out.m[i], rng));
  }
  Clock clock;
  clock.limit = query.limits.time_limit_s;
  bool timed_out = false;
  bool found = false;
  const std::uint64_t solver_seed = split_seed(query.seed, k);
  const bool complete = for_each_feasible(
      problem,
      [&](const Assignment& x) {
        ++out.candidates;
        for (std::size_t i = 0; i < k; ++i) {
          CopySet& cs = *sets[i];
          cs.fix(x);
          const std::size_t need = cs.m() / 2 + 1;
          std::size_t yes = 0, no = 0;
          for (std::size_t j = 0; j < cs.m() && yes < need && no <= cs.m() - need; ++j) {
            const auto r = cs.sat(j, solver_seed + i, query.limits);
            if (!r) {
              timed_out = true;
              return false;
            }
            (*r ? yes : no) += 1;
          }
          if (yes < need) return !clock.expired() || (timed_out = true, false);
        }
        found = true;
        out.x = x;
        return false;
      },
      clock);
  if (found) {
    out.status = OracleStatus::Sat;
  } else if (timed_out || !complete) {
    out.status = OracleStatus::Indeterminate;
  } else {
    out.status = OracleStatus::Unsat;
  }
  return out;
}

}  // namespace xsmoo

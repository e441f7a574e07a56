#include "xsmoo/sat.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

#include "xsmoo/encode.hpp"
#include "xsmoo/errors.hpp"

namespace xsmoo {

std::size_t env_limit(const char* name, std::size_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || v == 0) return fallback;
  return static_cast<std::size_t>(v);
}

std::size_t exhaustive_limit() { return env_limit("XSMOO_EXHAUSTIVE_LIMIT", 26); }
std::size_t count_limit() { return env_limit("XSMOO_COUNT_LIMIT", 24); }

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat:
      return "sat";
    case SolveStatus::Unsat:
      return "unsat";
    case SolveStatus::Timeout:
      return "timeout";
  }
  return "unknown";
}

bool evaluate(const Formula& f, const Assignment& a) {
  if (a.size() < f.space().total()) throw std::invalid_argument("assignment shorter than formula space");
  for (const Clause& c : f.clauses()) {
    bool sat = false;
    for (Lit l : c) {
      if (a.lit_true(l)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  for (const XorConstraint& x : f.xors()) {
    bool p = false;
    for (Var v : x.vars) p ^= a[v];
    if (p != x.parity) return false;
  }
  for (const CardinalityConstraint& c : f.cards()) {
    std::size_t n = 0;
    for (Lit l : c.lits) n += a.lit_true(l) ? 1 : 0;
    if (n < c.bound) return false;
  }
  return true;
}

// ---- Gaussian elimination over connected XOR components ----

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

bool component_consistent(const std::vector<const XorConstraint*>& rows_in) {
  std::vector<Var> vars;
  for (const XorConstraint* x : rows_in) vars.insert(vars.end(), x->vars.begin(), x->vars.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  const std::size_t cols = vars.size();
  const std::size_t words = cols / 64 + 1;  // last bit column holds parity
  std::vector<std::vector<std::uint64_t>> rows;
  rows.reserve(rows_in.size());
  for (const XorConstraint* x : rows_in) {
    std::vector<std::uint64_t> r(words, 0);
    for (Var v : x->vars) {
      const std::size_t c = static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
      r[c / 64] ^= std::uint64_t{1} << (c % 64);
    }
    if (x->parity) r[cols / 64] ^= std::uint64_t{1} << (cols % 64);
    rows.push_back(std::move(r));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t pivot = rank;
    while (pivot < rows.size() && (rows[pivot][c / 64] & bit) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && (rows[r][c / 64] & bit) != 0) {
        for (std::size_t w = c / 64; w < words; ++w) rows[r][w] ^= rows[rank][w];
      }
    }
    ++rank;
  }
  const std::uint64_t pbit = std::uint64_t{1} << (cols % 64);
  for (std::size_t r = rank; r < rows.size(); ++r) {
    if ((rows[r][cols / 64] & pbit) != 0) return false;
  }
  return true;
}

}  // namespace

bool xor_system_consistent(const Formula& f) {
  const auto& xs = f.xors();
  if (xs.empty()) return true;
  const std::size_t n = f.space().total();
  UnionFind uf(n);
  for (const XorConstraint& x : xs) {
    for (std::size_t i = 1; i < x.vars.size(); ++i) uf.unite(x.vars[0], x.vars[i]);
  }
  std::vector<std::vector<const XorConstraint*>> groups;
  std::vector<std::int64_t> slot(n, -1);
  for (const XorConstraint& x : xs) {
    if (x.vars.empty()) {
      if (x.parity) return false;
      continue;
    }
    const std::uint32_t root = uf.find(x.vars[0]);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::int64_t>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[root])].push_back(&x);
  }
  for (const auto& g : groups) {
    if (!component_consistent(g)) return false;
  }
  return true;
}

// ---- backends ----

namespace {

class CdclBackend : public SolverBackend {
 public:
  explicit CdclBackend(bool native) : native_(native) {}
  std::string name() const override { return native_ ? "cdcl" : "cdcl-cnf"; }
  bool native_xor() const override { return native_; }
  bool native_cardinality() const override { return native_; }
  SolveOutcome solve(const Formula& f, std::uint64_t seed, const SolveLimits& limits) override {
    CdclSolver s(f.space().total(), seed);
    s.add_formula(f);
    // Fixing x first splits hashed copies into independent subproblems.
    const std::vector<Var> decision = f.space().decision_vars();
    s.prioritize(decision);
    SolveOutcome out;
    out.status = s.solve({}, limits);
    if (out.status == SolveStatus::Sat) out.model = s.model();
    out.stats = s.stats();
    return out;
  }

 private:
  bool native_;
};

class ExhaustiveBackend : public SolverBackend {
 public:
  std::string name() const override { return "exhaustive"; }
  bool native_xor() const override { return true; }
  bool native_cardinality() const override { return true; }
  SolveOutcome solve(const Formula& f, std::uint64_t, const SolveLimits& limits) override {
    const std::size_t n = f.space().total();
    if (n > exhaustive_limit()) {
      throw LimitExceeded("exhaustive backend limited to " + std::to_string(exhaustive_limit()) +
                          " variables, formula has " + std::to_string(n));
    }
    const auto start = std::chrono::steady_clock::now();
    SolveOutcome out;
    out.status = SolveStatus::Unsat;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
      if (limits.time_limit_s > 0 && (bits & 0xFFFF) == 0xFFFF) {
        const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (el > limits.time_limit_s) {
          out.status = SolveStatus::Timeout;
          return out;
        }
      }
      Assignment a = Assignment::from_bits(bits, n);
      if (evaluate(f, a)) {
        out.status = SolveStatus::Sat;
        out.model = std::move(a);
        return out;
      }
    }
    return out;
  }
};

class ReferenceBackend : public SolverBackend {
 public:
  std::string name() const override { return "reference"; }
  bool native_xor() const override { return true; }
  bool native_cardinality() const override { return true; }
  SolveOutcome solve(const Formula& f, std::uint64_t seed, const SolveLimits& limits) override {
    if (f.space().total() <= exhaustive_limit()) return exhaustive_.solve(f, seed, limits);
    return cdcl_.solve(f, seed, limits);
  }

 private:
  ExhaustiveBackend exhaustive_;
  CdclBackend cdcl_{true};
};

}  // namespace

std::vector<std::string> backend_names() { return {"cdcl", "cdcl-cnf", "exhaustive", "reference"}; }

std::unique_ptr<SolverBackend> make_backend(const std::string& name) {
  if (name == "cdcl") return std::make_unique<CdclBackend>(true);
  if (name == "cdcl-cnf") return std::make_unique<CdclBackend>(false);
  if (name == "exhaustive") return std::make_unique<ExhaustiveBackend>();
  if (name == "reference") return std::make_unique<ReferenceBackend>();
  throw std::invalid_argument("unknown solver backend '" + name + "'");
}

SolveOutcome solve(const Formula& f, SolverBackend& backend, std::uint64_t seed, const SolveLimits& limits) {
  if (!xor_system_consistent(f)) {
    SolveOutcome out;
    out.status = SolveStatus::Unsat;
    return out;
  }
  const bool lower = (!backend.native_xor() && !f.xors().empty()) ||
                     (!backend.native_cardinality() && !f.cards().empty());
  SolveOutcome out;
  if (lower) {
    // Lower everything at once; partial lowering is not needed by any backend.
    out = backend.solve(lower_to_cnf(f), seed, limits);
  } else {
    out = backend.solve(f, seed, limits);
  }
  if (out.status == SolveStatus::Sat) out.model = out.model.prefix(f.space().total());
  return out;
}

// ---- counting ----

namespace {

std::uint64_t count_brute(const Formula& f, std::span<const Var> projection) {
  const std::size_t n = f.space().total();
  std::vector<std::uint8_t> hit(std::size_t{1} << projection.size(), 0);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    const Assignment a = Assignment::from_bits(bits, n);
    if (!evaluate(f, a)) continue;
    std::size_t key = 0;
    for (std::size_t i = 0; i < projection.size(); ++i) {
      if (a[projection[i]]) key |= std::size_t{1} << i;
    }
    hit[key] = 1;
  }
  return static_cast<std::uint64_t>(std::count(hit.begin(), hit.end(), 1));
}

// DFS over the projection; subtrees proven unsatisfiable are cut, and a
// full path is confirmed by the solver before it is counted.
std::uint64_t count_dfs(CdclSolver& s, std::span<const Var> projection, std::vector<Lit>& prefix) {
  if (s.solve(prefix) != SolveStatus::Sat) return 0;
  if (prefix.size() == projection.size()) return 1;
  std::uint64_t total = 0;
  const Var v = projection[prefix.size()];
  for (bool neg : {false, true}) {
    prefix.push_back(Lit(v, neg));
    total += count_dfs(s, projection, prefix);
    prefix.pop_back();
  }
  return total;
}

}  // namespace

std::uint64_t count_models(const Formula& f, std::span<const Var> projection, std::optional<std::size_t> limit) {
  const std::size_t lim = limit.value_or(count_limit());
  if (projection.size() > lim) {
    throw LimitExceeded("model counting limited to " + std::to_string(lim) + " projected variables, got " +
                        std::to_string(projection.size()));
  }
  for (Var v : projection) {
    if (!f.space().contains(v)) throw std::out_of_range("projection variable outside formula space");
  }
  std::vector<Var> proj(projection.begin(), projection.end());
  std::sort(proj.begin(), proj.end());
  if (std::adjacent_find(proj.begin(), proj.end()) != proj.end()) {
    throw std::invalid_argument("projection has duplicate variables");
  }
  if (f.space().total() <= 20) return count_brute(f, proj);
  if (!xor_system_consistent(f)) return 0;
  CdclSolver s(f.space().total());
  s.add_formula(f);
  std::vector<Lit> prefix;
  return count_dfs(s, proj, prefix);
}

}  // namespace xsmoo

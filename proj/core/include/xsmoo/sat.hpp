#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xsmoo/formula.hpp"

namespace xsmoo {

/// True when every clause, XOR and cardinality constraint of `f` holds under `a`.
bool evaluate(const Formula& f, const Assignment& a);

enum class SolveStatus { Sat, Unsat, Timeout };

std::string to_string(SolveStatus s);

struct SolveLimits {
  /// Wall-clock budget in seconds; 0 means unlimited.
  double time_limit_s = 0;
  /// Conflict budget for search backends; 0 means unlimited.
  std::uint64_t conflict_limit = 0;
};

struct SolveStats {
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::Timeout;
  /// Full model over the formula's space when status == Sat.
  Assignment model;
  SolveStats stats;
};

/// CDCL search with native XOR (watched variables) and cardinality
/// (counter) propagation, 1UIP learning, VSIDS, phase saving, Luby
/// restarts and LBD-based clause deletion.
class CdclSolver {
 public:
  explicit CdclSolver(std::size_t num_vars, std::uint64_t seed = 0);
  ~CdclSolver();
  CdclSolver(const CdclSolver&) = delete;
  CdclSolver& operator=(const CdclSolver&) = delete;

  std::size_t num_vars() const;
  void add_clause(std::span<const Lit> lits);
  void add_xor(std::span<const Var> vars, bool parity);
  void add_cardinality(std::span<const Lit> lits, std::size_t bound);
  void add_formula(const Formula& f);
  /// Branch on `vars` before any other unassigned variable.
  void prioritize(std::span<const Var> vars);

  /// Solves under `assumptions`. Returns Timeout if a limit is hit.
  SolveStatus solve(std::span<const Lit> assumptions = {}, const SolveLimits& limits = {});
  /// Valid after Sat.
  Assignment model() const;
  SolveStats stats() const;
  /// False once the constraint set is known unsatisfiable without assumptions.
  bool okay() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Pluggable decision procedure.
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual std::string name() const = 0;
  virtual bool native_xor() const = 0;
  virtual bool native_cardinality() const = 0;
  virtual SolveOutcome solve(const Formula& f, std::uint64_t seed, const SolveLimits& limits) = 0;
};

/// Known names: "cdcl", "cdcl-cnf" (CDCL on fully lowered CNF),
/// "exhaustive" (enumeration up to a variable limit), "reference"
/// (exhaustive when small enough, CDCL otherwise).
std::unique_ptr<SolverBackend> make_backend(const std::string& name);
std::vector<std::string> backend_names();

/// Variable limit of the exhaustive backend (XSMOO_EXHAUSTIVE_LIMIT, default 26).
std::size_t exhaustive_limit();

/// Front door: detects XOR inconsistency by Gaussian elimination, lowers
/// constraints the backend cannot handle natively, then dispatches. The
/// returned model covers `f.space()`.
SolveOutcome solve(const Formula& f, SolverBackend& backend, std::uint64_t seed = 0,
                   const SolveLimits& limits = {});

/// True when the XOR system of `f` alone has a solution over GF(2).
bool xor_system_consistent(const Formula& f);

/// Number of distinct assignments to `projection` that extend to a model
/// of `f`. Throws LimitExceeded if |projection| exceeds `limit`
/// (default: XSMOO_COUNT_LIMIT, 24).
std::uint64_t count_models(const Formula& f, std::span<const Var> projection,
                           std::optional<std::size_t> limit = std::nullopt);

/// Default projection limit for count_models.
std::size_t count_limit();

}  // namespace xsmoo

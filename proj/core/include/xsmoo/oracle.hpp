#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xsmoo/hashing.hpp"
#include "xsmoo/problem.hpp"
#include "xsmoo/sat.hpp"

namespace xsmoo {

/// max(ln k, n ln 2) + ln(2 / eta). Throws unless k >= 1 and 0 < eta < 1.
double confidence_tau(std::size_t k, std::size_t n, double eta);

enum class OracleStatus { Sat, Unsat, Indeterminate };

/// How the conjunction of amplified queries is decided.
///  - Monolithic: the full formula goes to the backend in one call.
///  - Decomposed: decision assignments are enumerated and, for each, every
///    hashed copy is decided on its own (copies only share x). Same XOR
///    draws, same answer; far cheaper when m is in the thousands.
enum class OracleStrategy { Monolithic, Decomposed };

std::string to_string(OracleStatus s);
std::string to_string(OracleStrategy s);
/// "monolithic" or "decomposed"; throws std::invalid_argument otherwise.
OracleStrategy parse_strategy(const std::string& name);

struct OracleQuery {
  std::vector<int> exponents;
  int l_star = 2;
  double eta = 0.1;
  std::uint64_t seed = 0;
  SolveLimits limits;
  AmplifyOptions amplify;
  OracleStrategy strategy = OracleStrategy::Decomposed;
  /// Keep the built conjunction as extended DIMACS in the result.
  bool dump_dimacs = false;
};

struct OracleResult {
  OracleStatus status = OracleStatus::Indeterminate;
  /// Decision assignment (n values) when status == Sat.
  Assignment x;
  double tau = 0;
  std::vector<std::size_t> m;
  /// n + sum_i m_i |y_i|: decision variables plus every latent copy.
  std::size_t query_vars = 0;
  /// All variables and constraints of the conjunction, aux included. Only
  /// filled when the formula is materialized (monolithic or dump).
  std::size_t total_vars = 0;
  std::size_t constraints = 0;
  /// Decision assignments examined (decomposed strategy).
  std::uint64_t candidates = 0;
  SolveStats stats;
  std::string dimacs;
};

/// Conjoins the decision constraints with Majority-amplified hashed copies
/// of every objective formula and solves the conjunction once. The problem
/// must be unweighted (embed weighted problems first).
OracleResult xor_sat(const SmooProblem& problem, const OracleQuery& query, SolverBackend& backend);

}  // namespace xsmoo

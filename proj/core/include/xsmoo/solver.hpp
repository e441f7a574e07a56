#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xsmoo/oracle.hpp"
#include "xsmoo/pareto.hpp"
#include "xsmoo/problem.hpp"

namespace xsmoo {

struct SolveConfig {
  double delta = 0.2;
  /// Unweighted path only; the weighted path always runs with 3.
  int epsilon = 3;
  /// Weighted path: either gamma, or T and b explicitly.
  std::optional<double> gamma;
  std::optional<int> T;
  std::optional<int> b;
  std::uint64_t seed = 0;
  std::string backend = "cdcl";
  OracleStrategy strategy = OracleStrategy::Decomposed;
  /// Per oracle call, seconds; 0 = unlimited.
  double time_limit_s = 0;
  /// Worker threads; 0 = hardware concurrency.
  std::size_t jobs = 0;
  /// Diagnostics only: replaces the amplification size.
  std::optional<std::size_t> m_override;
};

/// All exponent vectors with 0 <= l_i <= |y_i|, lexicographic (last index fastest).
std::vector<GridPoint> build_grid(const SmooProblem& problem);

struct PointOutcome {
  GridPoint point;
  OracleStatus status = OracleStatus::Indeterminate;
  /// Witness when status == Sat.
  Assignment x;
  std::uint64_t seed = 0;
};

struct WeightedParams {
  int T = 0;
  int b = 0;
  std::optional<double> gamma;
  double zeta = 0;
  /// 2^{5/T + zeta}
  double factor = 0;
  std::vector<Rational> lower;
  std::vector<Rational> upper;
  /// Per frontier entry and objective: 2^{|y_i|} L_i + (U_i - L_i) / 2^b * p_i^{1/T}.
  std::vector<std::vector<double>> estimates;
};

struct RunReport {
  std::size_t objectives = 0;
  std::size_t decisions = 0;
  std::vector<std::size_t> latent_sizes;
  /// prod (B_i + 1): the points actually queried.
  std::size_t grid_size = 0;
  /// prod B_i: the query count quoted alongside the algorithm.
  std::size_t grid_size_product = 0;
  double delta = 0;
  int epsilon = 0;
  int l_star = 0;
  double eta = 0;
  double tau = 0;
  std::vector<std::size_t> m;
  std::uint64_t seed = 0;
  std::string backend;
  OracleStrategy strategy = OracleStrategy::Decomposed;
  double time_limit_s = 0;
  std::size_t jobs = 1;
  std::vector<PointOutcome> outcomes;
  std::size_t sat = 0;
  std::size_t unsat = 0;
  std::size_t indeterminate = 0;
  bool all_indeterminate = false;
  double wall_time_s = 0;
  std::optional<WeightedParams> weighted;
  Frontier frontier;
};

/// Grid search over power-of-two thresholds with the amplified oracle; Sat
/// answers become (x, thresholds) entries, pruned to the non-dominated set.
/// Linear costs, when present, are scored exactly on each witness.
std::pair<Frontier, RunReport> xor_smoo(const SmooProblem& problem, const SolveConfig& cfg);

/// A weighted objective turned into a counting one: b counter bits z are
/// appended to the end of every latent block, and for each assignment of the
/// joint factor scope the count of admissible z equals floor(r_b).
struct EmbeddedObjective {
  WeightedObjective source;
  int b = 0;
  /// Over the widened layout (every block grows by b).
  Formula formula;
  /// z_1 (least significant) first.
  std::vector<Var> z;
  /// Joint scope in the widened layout.
  std::vector<Var> scope;
  /// floor(r_b), clamped to [0, 2^b], per scope assignment.
  std::vector<mpz_class> levels;
};

/// Default TABLE-mode limit on the joint factor scope (XSMOO_SCOPE_LIMIT).
std::size_t scope_limit();

EmbeddedObjective embed_weighted(const WeightedObjective& obj, int b);

/// Unweighted problem whose objective i is the conjunction of T independent
/// copies of the embedded objective; block i has T (|y_i| + b) variables.
SmooProblem build_pseudo(const SmooProblem& weighted, int T, int b);

/// T = ceil(10 / log2 gamma), b = max(0, ceil(max_i log2(U_i/L_i - 1) - log2(gamma - sqrt gamma))).
std::pair<int, int> params_for_gamma(double gamma, const std::vector<std::pair<Rational, Rational>>& bounds);

/// max_i log2(1 + (U_i - L_i) / (2^{5/T} L_i 2^b))
double zeta(int T, int b, const std::vector<std::pair<Rational, Rational>>& bounds);

std::pair<Frontier, RunReport> w_xor_smoo(const SmooProblem& problem, const SolveConfig& cfg);

}  // namespace xsmoo

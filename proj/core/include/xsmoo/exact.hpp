#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "xsmoo/pareto.hpp"
#include "xsmoo/problem.hpp"

namespace xsmoo {

/// Enumeration budget per call, in assignments (XSMOO_EXACT_LIMIT, default 2^24).
std::uint64_t exact_limit();

/// Exact objective values at decision x (n bits): counts over each latent
/// block, or weighted sums with exact rational factor products.
std::vector<Rational> exact_objectives(const SmooProblem& problem, const Assignment& x);

/// Sum over decisions of x_e * c_e. Zero when the problem has no costs.
Rational exact_cost(const SmooProblem& problem, const Assignment& x);

struct ScoredDecision {
  Assignment x;
  std::vector<Rational> scores;
  std::optional<Rational> cost;
};

/// Every feasible x (decision constraints hold) with its exact scores, in
/// increasing bit order.
std::vector<ScoredDecision> score_all(const SmooProblem& problem);

/// Non-dominated feasible decisions under strict dominance; costs, when
/// present, are minimized alongside the objectives.
Frontier exact_pareto(const SmooProblem& problem);

/// Maximal grid points reachable with an exact oracle and one witness each.
/// Entries carry the exact scores of their witness in p.
Frontier exact_threshold_frontier(const SmooProblem& problem);

/// Both inequalities of the discretized weighted count bound at decision x:
///   2^m L + (U - L) / 2^b * S_hat <= S < 2^m L + (U - L) / 2^b * (S_hat + 2^m)
/// where S is the exact weighted sum, S_hat the embedded count and m = |y|.
bool check_weighted_bounds(const WeightedObjective& obj, int b, const Assignment& x);

/// Smallest and largest value of f(x, y) = [hard] * prod factors over all
/// decisions and latent assignments (zeros included).
std::pair<Rational, Rational> exact_bounds(const WeightedObjective& obj);

/// Count of the embedded objective at x, by enumeration over (y, z).
mpz_class embedded_count(const WeightedObjective& obj, int b, const Assignment& x);

}  // namespace xsmoo

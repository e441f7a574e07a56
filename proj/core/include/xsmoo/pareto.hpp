#pragma once

#include <optional>
#include <span>
#include <vector>

#include "xsmoo/formula.hpp"
#include "xsmoo/rational.hpp"

namespace xsmoo {

/// Exponent vector (l_1, ..., l_k) of the threshold point (2^{l_1}, ..., 2^{l_k}).
struct GridPoint {
  std::vector<int> exponents;
  std::vector<Rational> thresholds() const;
  bool operator==(const GridPoint&) const = default;
};

struct FrontierEntry {
  Assignment x;
  std::vector<Rational> p;
  /// Exact linear cost of x when the problem carries one (minimized).
  std::optional<Rational> cost;
  bool operator==(const FrontierEntry&) const = default;
};

using Frontier = std::vector<FrontierEntry>;
using ScoreVector = std::vector<Rational>;

/// p >= q element-wise (equality-inclusive). Throws on length mismatch.
bool dominates(std::span<const Rational> p, std::span<const Rational> q);

/// p >= q element-wise and p > q in at least one coordinate.
bool strictly_dominates(std::span<const Rational> p, std::span<const Rational> q);

/// p, followed by -cost when the entry has a cost, so that "larger is
/// better" holds in every coordinate.
ScoreVector dominance_key(const FrontierEntry& e);

/// Drops every entry whose p is dominated by a different p vector; keeps the
/// first entry (input order) of each group of identical p vectors.
Frontier prune_nondominated(const std::vector<FrontierEntry>& entries);

/// Keeps every entry not strictly dominated by another; ties all survive.
Frontier strict_nondominated(const std::vector<FrontierEntry>& entries);

/// True iff every reference score with all coordinates >= floor is
/// gamma-dominated (gamma * c_i >= r_i for all i) by some candidate score.
bool is_gamma_approximate(const std::vector<ScoreVector>& candidates, const std::vector<ScoreVector>& reference,
                          const Rational& gamma, const Rational& floor = Rational(0));

}  // namespace xsmoo

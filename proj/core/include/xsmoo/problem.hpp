#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "xsmoo/formula.hpp"
#include "xsmoo/rational.hpp"

namespace xsmoo {

/// Nonnegative table over the assignments of `scope` (decision variables
/// and variables of the owning latent block). Entry `j` belongs to
/// the assignment where scope[t] takes bit t of j (little-endian).
struct WeightFactor {
  std::vector<Var> scope;
  std::vector<Rational> table;
  bool operator==(const WeightFactor&) const = default;
};

struct UnweightedObjective {
  std::size_t index = 0;
  Formula formula;
  bool operator==(const UnweightedObjective&) const = default;
};

/// f(x, y) = [hard(x, y)] * prod_t factor_t(y), with declared bounds lower <= f <= upper.
struct WeightedObjective {
  std::size_t index = 0;
  Formula hard;
  std::vector<WeightFactor> factors;
  Rational lower;
  Rational upper;
  bool operator==(const WeightedObjective&) const = default;

  /// Sorted union of all factor scopes.
  std::vector<Var> joint_scope() const;
  /// Product of the factor entries selected by `a` (ignores the hard formula).
  Rational factor_product(const Assignment& a) const;
};

enum class ObjectiveKind { Unweighted, Weighted };

/// max_x (sum_{y_1} f_1(x, y_1), ..., sum_{y_k} f_k(x, y_k)) subject to
/// decision constraints over x, with an optional linear cost sum_e c_e x_e
/// scored exactly and minimized alongside the counts.
class SmooProblem {
 public:
  static SmooProblem unweighted(VariableSpace space, std::vector<Formula> objectives,
                                Formula decision_constraints, std::vector<Rational> costs = {});
  static SmooProblem weighted(VariableSpace space, std::vector<WeightedObjective> objectives,
                              Formula decision_constraints, std::vector<Rational> costs = {});

  ObjectiveKind kind() const { return kind_; }
  bool is_weighted() const { return kind_ == ObjectiveKind::Weighted; }
  const VariableSpace& space() const { return space_; }
  std::size_t objective_count() const;
  std::size_t decision_count() const { return space_.decision_count(); }

  const std::vector<UnweightedObjective>& unweighted_objectives() const { return unweighted_; }
  const std::vector<WeightedObjective>& weighted_objectives() const { return weighted_; }
  const Formula& decision_constraints() const { return decision_constraints_; }
  const std::vector<Rational>& costs() const { return costs_; }
  bool has_costs() const { return !costs_.empty(); }

  /// Formula whose satisfying (x, y_i) pairs are counted by objective i
  /// (the hard formula for weighted objectives).
  const Formula& objective_formula(std::size_t i) const;

  bool operator==(const SmooProblem&) const = default;

 private:
  SmooProblem() = default;
  void validate() const;

  ObjectiveKind kind_ = ObjectiveKind::Unweighted;
  VariableSpace space_;
  std::vector<UnweightedObjective> unweighted_;
  std::vector<WeightedObjective> weighted_;
  Formula decision_constraints_;
  std::vector<Rational> costs_;
};

/// Throws std::invalid_argument unless every variable of `f` lies in the
/// decision range, latent block `block`, or aux owned by `block`.
void check_partition(const Formula& f, std::size_t block);

/// `copies` structurally identical versions of a block-local formula whose
/// latent (and private aux) variables are renamed onto fresh, pairwise
/// disjoint aux ranges. Decision variables stay shared.
struct ReplicatedLatent {
  VariableSpace space;
  std::vector<Formula> copies;
  /// latent_vars[c][j] is the id standing in for block variable j in copy c.
  std::vector<std::vector<Var>> latent_vars;
};

ReplicatedLatent replicate_latent(const Formula& formula, std::size_t block, std::size_t copies);

}  // namespace xsmoo

#include "xsmoo/problem.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace xsmoo {

std::vector<Var> WeightedObjective::joint_scope() const {
  std::vector<Var> out;
  for (const auto& f : factors) out.insert(out.end(), f.scope.begin(), f.scope.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational WeightedObjective::factor_product(const Assignment& a) const {
  Rational w = 1;
  for (const auto& f : factors) {
    std::size_t index = 0;
    for (std::size_t t = 0; t < f.scope.size(); ++t) {
      if (a.get(f.scope[t])) index |= std::size_t{1} << t;
    }
    w *= f.table[index];
  }
  return w;
}

void check_partition(const Formula& f, std::size_t block) {
  const VariableSpace& space = f.space();
  for (Var v : f.mentioned()) {
    const VarClass c = space.classify(v);
    const bool ok = c.kind == VarKind::Decision || c.block == block;
    if (!ok) {
      throw std::invalid_argument("objective " + std::to_string(block) + " mentions variable " +
                                  std::to_string(v) + " from a foreign partition");
    }
  }
}

ReplicatedLatent replicate_latent(const Formula& formula, std::size_t block, std::size_t copies) {
  if (copies == 0) throw std::invalid_argument("replicate_latent needs at least one copy");
  check_partition(formula, block);
  const VariableSpace& src = formula.space();
  const std::size_t width = src.block_size(block);
  const std::size_t private_aux = src.aux_count();

  ReplicatedLatent out;
  out.space = src;
  std::vector<std::vector<Var>> maps;
  maps.reserve(copies);
  for (std::size_t c = 0; c < copies; ++c) {
    const Var first = out.space.allocate_aux(width + private_aux, block);
    std::vector<Var> map(src.total());
    for (Var v = 0; v < src.total(); ++v) map[v] = v;
    for (std::size_t j = 0; j < width; ++j) map[src.latent(block, j)] = first + static_cast<Var>(j);
    for (std::size_t j = 0; j < private_aux; ++j) {
      map[src.base_count() + j] = first + static_cast<Var>(width + j);
    }
    std::vector<Var> ids(width);
    for (std::size_t j = 0; j < width; ++j) ids[j] = first + static_cast<Var>(j);
    out.latent_vars.push_back(std::move(ids));
    maps.push_back(std::move(map));
  }
  out.copies.reserve(copies);
  for (const auto& map : maps) out.copies.push_back(formula.remapped(map, out.space));
  return out;
}

namespace {

bool same_base(const VariableSpace& a, const VariableSpace& b) {
  return a.decision_count() == b.decision_count() && a.latent_sizes() == b.latent_sizes();
}

}  // namespace

SmooProblem SmooProblem::unweighted(VariableSpace space, std::vector<Formula> objectives,
                                    Formula decision_constraints, std::vector<Rational> costs) {
  SmooProblem p;
  p.kind_ = ObjectiveKind::Unweighted;
  p.space_ = std::move(space);
  for (std::size_t i = 0; i < objectives.size(); ++i) p.unweighted_.push_back({i, std::move(objectives[i])});
  p.decision_constraints_ = std::move(decision_constraints);
  p.costs_ = std::move(costs);
  p.validate();
  return p;
}

SmooProblem SmooProblem::weighted(VariableSpace space, std::vector<WeightedObjective> objectives,
                                  Formula decision_constraints, std::vector<Rational> costs) {
  SmooProblem p;
  p.kind_ = ObjectiveKind::Weighted;
  p.space_ = std::move(space);
  for (std::size_t i = 0; i < objectives.size(); ++i) objectives[i].index = i;
  p.weighted_ = std::move(objectives);
  p.decision_constraints_ = std::move(decision_constraints);
  p.costs_ = std::move(costs);
  p.validate();
  return p;
}

std::size_t SmooProblem::objective_count() const {
  return kind_ == ObjectiveKind::Weighted ? weighted_.size() : unweighted_.size();
}

const Formula& SmooProblem::objective_formula(std::size_t i) const {
  return kind_ == ObjectiveKind::Weighted ? weighted_.at(i).hard : unweighted_.at(i).formula;
}

void SmooProblem::validate() const {
  const std::size_t k = objective_count();
  if (k == 0) throw std::invalid_argument("problem needs at least one objective");
  if (space_.block_count() != k) {
    throw std::invalid_argument("expected one latent block per objective (" + std::to_string(k) + "), got " +
                                std::to_string(space_.block_count()));
  }
  for (std::size_t i = 0; i < k; ++i) {
    const Formula& f = objective_formula(i);
    if (!same_base(f.space(), space_)) throw std::invalid_argument("objective formula space differs from problem");
    check_partition(f, i);
  }
  if (!same_base(decision_constraints_.space(), space_)) {
    throw std::invalid_argument("decision constraint space differs from problem");
  }
  for (Var v : decision_constraints_.mentioned()) {
    if (decision_constraints_.space().classify(v).kind != VarKind::Decision) {
      throw std::invalid_argument("decision constraints may only mention decision variables");
    }
  }
  if (!costs_.empty() && costs_.size() != space_.decision_count()) {
    throw std::invalid_argument("cost vector length must equal the decision count");
  }
  for (const WeightedObjective& w : weighted_) {
    if (!(w.upper > w.lower)) throw std::invalid_argument("weighted objective needs upper > lower");
    if (w.lower < 0) throw std::invalid_argument("weighted objective bounds must be nonnegative");
    for (const WeightFactor& f : w.factors) {
      if (f.scope.size() >= 63 || f.table.size() != (std::size_t{1} << f.scope.size())) {
        throw std::invalid_argument("factor table size must be 2^|scope|");
      }
      for (Var v : f.scope) {
        const VarClass c = space_.classify(v);
        if (c.kind != VarKind::Decision && (c.kind != VarKind::Latent || c.block != w.index)) {
          throw std::invalid_argument("factor scope must lie in the decisions or the objective's latent block");
        }
      }
      for (const Rational& e : f.table) {
        if (e < 0) throw std::invalid_argument("factor entries must be nonnegative");
      }
    }
  }
}

}  // namespace xsmoo

#include "xsmoo/formula.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace xsmoo {

Lit Lit::from_dimacs(long value) {
  if (value == 0) throw std::invalid_argument("literal 0 is not a variable");
  const bool negated = value < 0;
  const long magnitude = negated ? -value : value;
  return Lit(static_cast<Var>(magnitude - 1), negated);
}

VariableSpace::VariableSpace(std::size_t decision_count, std::vector<std::size_t> latent_sizes)
    : decision_(decision_count), latent_(std::move(latent_sizes)) {
  std::size_t next = decision_;
  latent_begin_.reserve(latent_.size());
  for (std::size_t size : latent_) {
    latent_begin_.push_back(static_cast<Var>(next));
    next += size;
  }
  base_ = next;
  total_ = next;
}

VariableSpace build_space(std::size_t decision_count, std::vector<std::size_t> latent_sizes) {
  return VariableSpace(decision_count, std::move(latent_sizes));
}

Var VariableSpace::decision(std::size_t j) const {
  if (j >= decision_) throw std::out_of_range("decision index out of range");
  return static_cast<Var>(j);
}

Var VariableSpace::latent(std::size_t block, std::size_t j) const {
  if (j >= latent_.at(block)) throw std::out_of_range("latent index out of range");
  return latent_begin_[block] + static_cast<Var>(j);
}

std::vector<Var> VariableSpace::decision_vars() const {
  std::vector<Var> out(decision_);
  std::iota(out.begin(), out.end(), Var{0});
  return out;
}

std::vector<Var> VariableSpace::block_vars(std::size_t block) const {
  std::vector<Var> out(latent_.at(block));
  std::iota(out.begin(), out.end(), latent_begin_[block]);
  return out;
}

VarClass VariableSpace::classify(Var v) const {
  if (v >= total_) throw std::out_of_range("variable " + std::to_string(v) + " outside space");
  if (v < decision_) return {VarKind::Decision, 0};
  if (v < base_) {
    auto it = std::upper_bound(latent_begin_.begin(), latent_begin_.end(), v);
    // Skip over empty blocks that share the same begin.
    std::size_t block = static_cast<std::size_t>(it - latent_begin_.begin()) - 1;
    while (latent_[block] == 0) --block;
    return {VarKind::Latent, block};
  }
  auto it = std::upper_bound(aux_.begin(), aux_.end(), v,
                             [](Var value, const AuxRange& r) { return value < r.first; });
  return {VarKind::Aux, std::prev(it)->owner};
}

Var VariableSpace::allocate_aux(std::size_t count, std::size_t owner) {
  const Var first = static_cast<Var>(total_);
  if (count == 0) return first;
  if (!aux_.empty() && aux_.back().owner == owner && aux_.back().first + aux_.back().count == first) {
    aux_.back().count += count;
  } else {
    aux_.push_back({first, count, owner});
  }
  total_ += count;
  return first;
}

void Formula::check_var(Var v) const {
  if (!space_.contains(v)) {
    throw std::invalid_argument("variable " + std::to_string(v) + " outside formula space of size " +
                                std::to_string(space_.total()));
  }
}

void Formula::add_clause(Clause clause) {
  for (Lit l : clause) check_var(l.var());
  clauses_.push_back(std::move(clause));
}

void Formula::add_xor(XorConstraint x) {
  for (Var v : x.vars) check_var(v);
  xors_.push_back(std::move(x));
}

void Formula::add_cardinality(CardinalityConstraint c) {
  for (Lit l : c.lits) check_var(l.var());
  if (c.bound > c.lits.size() + 1) {
    // bound == size + 1 is the canonical impossible bound; anything larger is a typo.
    throw std::invalid_argument("cardinality bound exceeds literal count");
  }
  cards_.push_back(std::move(c));
}

std::vector<Var> Formula::append(const Formula& other) {
  const VariableSpace& theirs = other.space();
  if (theirs.decision_count() != space_.decision_count() || theirs.latent_sizes() != space_.latent_sizes()) {
    throw std::invalid_argument("append: formulas have different base layouts");
  }
  std::vector<Var> map(theirs.total());
  std::iota(map.begin(), map.begin() + static_cast<std::ptrdiff_t>(theirs.base_count()), Var{0});
  for (const auto& range : theirs.aux_ranges()) {
    const Var first = space_.allocate_aux(range.count, range.owner);
    for (std::size_t j = 0; j < range.count; ++j) map[range.first + j] = first + static_cast<Var>(j);
  }
  for (const Clause& c : other.clauses()) {
    Clause renamed;
    renamed.reserve(c.size());
    for (Lit l : c) renamed.emplace_back(map[l.var()], l.negated());
    clauses_.push_back(std::move(renamed));
  }
  for (const XorConstraint& x : other.xors()) {
    XorConstraint renamed{{}, x.parity};
    renamed.vars.reserve(x.vars.size());
    for (Var v : x.vars) renamed.vars.push_back(map[v]);
    xors_.push_back(std::move(renamed));
  }
  for (const CardinalityConstraint& c : other.cards()) {
    CardinalityConstraint renamed{{}, c.bound};
    renamed.lits.reserve(c.lits.size());
    for (Lit l : c.lits) renamed.lits.emplace_back(map[l.var()], l.negated());
    cards_.push_back(std::move(renamed));
  }
  return map;
}

Formula Formula::remapped(std::span<const Var> map, VariableSpace target) const {
  if (map.size() < space_.total()) throw std::invalid_argument("remap table shorter than space");
  Formula out(std::move(target));
  for (const Clause& c : clauses_) {
    Clause renamed;
    renamed.reserve(c.size());
    for (Lit l : c) renamed.emplace_back(map[l.var()], l.negated());
    out.add_clause(std::move(renamed));
  }
  for (const XorConstraint& x : xors_) {
    XorConstraint renamed{{}, x.parity};
    for (Var v : x.vars) renamed.vars.push_back(map[v]);
    out.add_xor(std::move(renamed));
  }
  for (const CardinalityConstraint& c : cards_) {
    CardinalityConstraint renamed{{}, c.bound};
    for (Lit l : c.lits) renamed.lits.emplace_back(map[l.var()], l.negated());
    out.add_cardinality(std::move(renamed));
  }
  return out;
}

std::vector<Var> Formula::mentioned() const {
  std::vector<Var> out;
  for (const Clause& c : clauses_)
    for (Lit l : c) out.push_back(l.var());
  for (const XorConstraint& x : xors_) out.insert(out.end(), x.vars.begin(), x.vars.end());
  for (const CardinalityConstraint& c : cards_)
    for (Lit l : c.lits) out.push_back(l.var());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Assignment Assignment::from_bits(std::uint64_t bits, std::size_t size) {
  Assignment a(size);
  for (std::size_t i = 0; i < size && i < 64; ++i) a.bits_[i] = static_cast<std::uint8_t>((bits >> i) & 1u);
  return a;
}

Assignment Assignment::from_string(std::string_view bits) {
  Assignment a(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw std::invalid_argument("assignment string must be 0/1");
    a.bits_[i] = bits[i] == '1' ? 1 : 0;
  }
  return a;
}

Assignment Assignment::prefix(std::size_t count) const {
  if (count > bits_.size()) throw std::out_of_range("prefix longer than assignment");
  Assignment a;
  a.bits_.assign(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(count));
  return a;
}

std::string Assignment::to_string() const {
  std::string out(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) out[i] = bits_[i] ? '1' : '0';
  return out;
}

}  // namespace xsmoo

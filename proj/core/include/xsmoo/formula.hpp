#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xsmoo {

using Var = std::uint32_t;

/// A literal packed as 2*var + sign; the low bit set means negated.
class Lit {
 public:
  constexpr Lit() = default;
  constexpr Lit(Var var, bool negated) : code_(2 * var + (negated ? 1u : 0u)) {}

  static constexpr Lit pos(Var var) { return Lit(var, false); }
  static constexpr Lit neg(Var var) { return Lit(var, true); }
  /// DIMACS convention: +v / -v with 1-based variable numbers.
  static Lit from_dimacs(long value);

  constexpr Var var() const { return code_ >> 1; }
  constexpr bool negated() const { return (code_ & 1u) != 0; }
  constexpr std::uint32_t code() const { return code_; }
  long to_dimacs() const { return negated() ? -static_cast<long>(var() + 1) : static_cast<long>(var() + 1); }

  constexpr Lit operator~() const {
    Lit out;
    out.code_ = code_ ^ 1u;
    return out;
  }
  constexpr auto operator<=>(const Lit&) const = default;

 private:
  std::uint32_t code_ = 0;
};

using Clause = std::vector<Lit>;

/// XOR of `vars` equals `parity`.
struct XorConstraint {
  std::vector<Var> vars;
  bool parity = false;
  bool operator==(const XorConstraint&) const = default;
};

/// At least `bound` of `lits` are true.
struct CardinalityConstraint {
  std::vector<Lit> lits;
  std::size_t bound = 0;
  bool operator==(const CardinalityConstraint&) const = default;
};

enum class VarKind { Decision, Latent, Aux };

inline constexpr std::size_t kSharedAux = std::numeric_limits<std::size_t>::max();

struct VarClass {
  VarKind kind;
  /// Latent block index, or aux owner (objective index or kSharedAux).
  std::size_t block;
};

/// Dense variable ids laid out as [decision | latent 1 | ... | latent k | aux].
class VariableSpace {
 public:
  struct AuxRange {
    Var first;
    std::size_t count;
    std::size_t owner;
    bool operator==(const AuxRange&) const = default;
  };

  VariableSpace() = default;
  VariableSpace(std::size_t decision_count, std::vector<std::size_t> latent_sizes);

  std::size_t decision_count() const { return decision_; }
  std::size_t block_count() const { return latent_.size(); }
  std::size_t block_size(std::size_t block) const { return latent_.at(block); }
  Var block_begin(std::size_t block) const { return latent_begin_.at(block); }
  const std::vector<std::size_t>& latent_sizes() const { return latent_; }
  std::size_t base_count() const { return base_; }
  std::size_t aux_count() const { return total_ - base_; }
  std::size_t total() const { return total_; }
  const std::vector<AuxRange>& aux_ranges() const { return aux_; }

  Var decision(std::size_t j) const;
  Var latent(std::size_t block, std::size_t j) const;
  std::vector<Var> decision_vars() const;
  std::vector<Var> block_vars(std::size_t block) const;

  bool contains(Var v) const { return v < total_; }
  VarClass classify(Var v) const;

  /// Appends `count` aux ids tagged with `owner`; returns the first new id.
  Var allocate_aux(std::size_t count, std::size_t owner = kSharedAux);

  bool operator==(const VariableSpace&) const = default;

 private:
  std::size_t decision_ = 0;
  std::vector<std::size_t> latent_;
  std::vector<Var> latent_begin_;
  std::size_t base_ = 0;
  std::size_t total_ = 0;
  std::vector<AuxRange> aux_;
};

VariableSpace build_space(std::size_t decision_count, std::vector<std::size_t> latent_sizes);

/// Conjunction of clauses, XORs and cardinality constraints over a space.
///
/// An empty clause is accepted and means "false"; the lowering routines use
/// it to express an impossible bound.
class Formula {
 public:
  Formula() = default;
  explicit Formula(VariableSpace space) : space_(std::move(space)) {}

  const VariableSpace& space() const { return space_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const std::vector<XorConstraint>& xors() const { return xors_; }
  const std::vector<CardinalityConstraint>& cards() const { return cards_; }

  void add_clause(Clause clause);
  void add_unit(Lit lit) { add_clause({lit}); }
  void add_xor(XorConstraint x);
  void add_cardinality(CardinalityConstraint c);

  /// Allocates aux variables in this formula's space.
  Var fresh(std::size_t count = 1, std::size_t owner = kSharedAux) { return space_.allocate_aux(count, owner); }

  /// Conjoins `other`. Both must share the same decision/latent layout; the
  /// aux variables of `other` are renamed onto fresh aux ids of this formula.
  /// Returns the rename table indexed by `other`'s ids.
  std::vector<Var> append(const Formula& other);

  /// Renames every variable through `map` into `target`.
  Formula remapped(std::span<const Var> map, VariableSpace target) const;

  /// Sorted, deduplicated ids mentioned by any constraint.
  std::vector<Var> mentioned() const;

  std::size_t constraint_count() const { return clauses_.size() + xors_.size() + cards_.size(); }
  bool has_constraints() const { return constraint_count() != 0; }

  bool operator==(const Formula&) const = default;

 private:
  void check_var(Var v) const;

  VariableSpace space_;
  std::vector<Clause> clauses_;
  std::vector<XorConstraint> xors_;
  std::vector<CardinalityConstraint> cards_;
};

/// Dense 0/1 map from variable id to value.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t size) : bits_(size, 0) {}
  static Assignment from_bits(std::uint64_t bits, std::size_t size);
  static Assignment from_string(std::string_view bits);

  std::size_t size() const { return bits_.size(); }
  bool operator[](Var v) const { return bits_[v] != 0; }
  bool get(Var v) const { return bits_.at(v) != 0; }
  void set(Var v, bool value) { bits_.at(v) = value ? 1 : 0; }
  void resize(std::size_t size) { bits_.resize(size, 0); }

  /// First `count` values as a new assignment.
  Assignment prefix(std::size_t count) const;
  /// "0101..." over all ids.
  std::string to_string() const;
  bool lit_true(Lit l) const { return (bits_[l.var()] != 0) != l.negated(); }

  auto operator<=>(const Assignment&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace xsmoo

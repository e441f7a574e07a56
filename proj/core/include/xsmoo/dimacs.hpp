#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "xsmoo/formula.hpp"

namespace xsmoo {

/// DIMACS CNF with "x" lines for XORs ("x1 2 0" means x1 ^ x2 = 1; a
/// negated literal flips the parity). Cardinality constraints are lowered
/// to clauses first, so the header may declare more variables than
/// `f.space().total()`. An empty XOR with parity 1 becomes the empty clause.
std::string to_dimacs(const Formula& f, std::string_view comment = {});

/// Parses the format written by to_dimacs. Without `space`, every variable
/// is a decision variable. Throws ParseError carrying the offending line.
Formula from_dimacs(std::string_view text, std::optional<VariableSpace> space = std::nullopt);

}  // namespace xsmoo

#pragma once

#include <optional>
#include <vector>

#include "xsmoo/formula.hpp"

namespace xsmoo {

/// Chain decomposition of an XOR into width-3 links (4 clauses each). The
/// link variables are allocated in `space` and are functionally determined,
/// so the projected model count onto the original variables is preserved.
std::vector<Clause> encode_xor_to_cnf(const XorConstraint& x, VariableSpace& space);

/// Sequential-counter encoding of "at least bound of lits". Counter outputs
/// are fully defined (both implication directions), so the encoding is
/// count-preserving under projection onto the original literals.
std::vector<Clause> encode_cardinality(const CardinalityConstraint& c, VariableSpace& space);

/// Rewrites every XOR and cardinality constraint of `f` into CNF.
Formula lower_to_cnf(const Formula& f);

/// Tseitin-style reification: adds functional definitions to `out` and
/// returns a literal that is true exactly when every constraint of `f`
/// holds. `f` must live in (a prefix of) `out`'s space.
Lit reify(const Formula& f, Formula& out, std::size_t owner = kSharedAux);

}  // namespace xsmoo

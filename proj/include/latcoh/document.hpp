#pragma once

#include "latcoh/lattice.hpp"

#include <string>

namespace latcoh {

/// Text document format for lattices:
///
///   latcoh lattice v1
///   base Z | base Z_loc <p> | base cyclotomic <m>
///   group cyclic <n>
///   rank <r>
///   sigma
///   <r rows of r integers>
///   zeta          (required exactly when the base is cyclotomic)
///   <r rows of r integers>
///   end
///
/// '#' starts a comment; blank lines are ignored.  Parsing re-checks every
/// lattice invariant and rejects violations.
GroupLattice parse_document(const std::string& text);
std::string emit_document(const GroupLattice& m);

/// Builtin generators: "regular:N", "trivial:N", "augmentation:N",
/// "zeta-twist:P" (P = 2 gives the Gaussian variant), and
/// "permutation:N:d1,d2,...".
GroupLattice builtin_lattice(const std::string& spec);

} // namespace latcoh

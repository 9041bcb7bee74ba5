#pragma once

#include "latcoh/exactla.hpp"
#include "latcoh/lattice.hpp"

#include <optional>
#include <vector>

namespace latcoh {

/// A Tate cohomology group: a finite abelian group, optionally with the
/// cyclic-string structure of the residual (1 - zeta)-action when the base
/// ring is cyclotomic and the structure was requested.
struct TateModule {
    AbelianInvariants invariants;
    std::optional<std::vector<long>> zeta_blocks;

    bool is_trivial() const { return invariants.is_trivial(); }
    bool operator==(const TateModule& o) const { return invariants == o.invariants; }
    /// Sum of the zeta block sizes (the length over R/(1 - zeta)).
    long zeta_length() const;
};

/// Sum over the subgroup of the sigma-action: N = 1 + T + ... + T^(d-1)
/// with T = sigma^(n/d).
IntMatrix norm_matrix(const GroupLattice& m, const Subgroup& h);

/// Tate H^-1(h, m) = ker(N) / im(T - 1).  Under a localized base ring only
/// the p-parts of the invariant factors are kept.
TateModule tate_minus_one(const GroupLattice& m, const Subgroup& h,
                          bool with_zeta_blocks = false);

/// Tate H^0(h, m) = m^h / N(m), with the fixed sublattice saturated.
TateModule tate_zero(const GroupLattice& m, const Subgroup& h, bool with_zeta_blocks = false);

/// H^1(h, m) computed from the cocycle description ker(N) / im(T - 1) and
/// cross-checked against the 2-periodic free-resolution computation; the two
/// must agree.
TateModule h_one(const GroupLattice& m, const Subgroup& h, bool with_zeta_blocks = false);

/// Cocycle route alone (ker N via saturated kernel basis, then coordinates).
TateModule h_one_cocycle(const GroupLattice& m, const Subgroup& h);

/// Resolution route alone: homology of M --(T-1)--> M --N--> M extracted
/// through the Smith form of the norm map.
TateModule h_one_resolution(const GroupLattice& m, const Subgroup& h);

struct TateTriple {
    TateModule minus_one;
    TateModule zero;
    TateModule one;
};

struct TateProfile {
    std::vector<std::pair<Subgroup, TateTriple>> by_subgroup; // ascending order

    const TateTriple& at_order(long d) const;
};

/// All three Tate groups at every subgroup.  Subgroups are evaluated in
/// parallel when enabled; the result is schedule-independent.
TateProfile tate_profile(const GroupLattice& m);
TateProfile tate_profile_serial(const GroupLattice& m);

} // namespace latcoh

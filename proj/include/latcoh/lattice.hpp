#pragma once

#include "latcoh/exactla.hpp"
#include "latcoh/groupring.hpp"
#include "latcoh/intmatrix.hpp"

#include <optional>
#include <vector>

namespace latcoh {

/// An R pi-lattice: a free Z-module with a sigma-action of order dividing n,
/// plus a commuting zeta-action when the base ring is cyclotomic.
struct GroupLattice {
    BaseRing base;
    CyclicGroup group;
    long z_rank = 0;
    IntMatrix sigma;
    std::optional<IntMatrix> zeta;
    /// Orbit sizes when the lattice was built as a permutation lattice
    /// (construction record; propagated through direct sums and duals).
    std::optional<std::vector<long>> perm_orbits;

    /// Re-checks every structural invariant; throws InvariantViolation.
    void validate() const;
    bool is_permutation_record() const { return perm_orbits.has_value(); }
};

/// A map of lattices; the matrix intertwines the actions.
struct LatticeMap {
    GroupLattice source;
    GroupLattice target;
    IntMatrix matrix;

    void validate() const;
};

/// Direct sum over the listed orbit sizes d (each d | n) of R[pi/pi'],
/// sigma acting as the d-cycle on each block; for a cyclotomic base each
/// block is tensored with the ring's regular representation.
GroupLattice permutation_lattice(const BaseRing& base, const CyclicGroup& g,
                                 const std::vector<long>& orbit_sizes);

/// Rank-one trivial lattice (orbit size 1).
GroupLattice trivial_lattice(const BaseRing& base, const CyclicGroup& g);

/// The regular lattice R pi (single orbit of size n).
GroupLattice regular_lattice(const BaseRing& base, const CyclicGroup& g);

/// Kernel of the augmentation R pi -> R on the fixed basis
/// (sigma - 1, sigma^2 - 1, ..., sigma^(n-1) - 1).
GroupLattice augmentation_ideal(const BaseRing& base, const CyclicGroup& g);

/// Contragredient lattice: both actions replaced by inverse-transpose.
GroupLattice dual(const GroupLattice& m);

GroupLattice direct_sum(const GroupLattice& a, const GroupLattice& b);

/// Same module viewed over the subgroup: sigma-action raised to n/d.
GroupLattice restrict_to(const GroupLattice& m, const Subgroup& h);

/// Saturated basis of the h-fixed sublattice, one column per basis vector.
IntMatrix fixed_sublattice(const GroupLattice& m, const Subgroup& h);

struct PhiQuotient {
    GroupLattice torsion_free; // induced actions; Phi_d(sigma) vanishes on it
    AbelianInvariants torsion;
};

/// M / Phi_d(sigma) M split into its torsion invariants and torsion-free
/// part (the latter carries the induced Z[zeta_d]-structure through sigma).
PhiQuotient phi_quotient(const GroupLattice& m, long d);

/// Saturated sublattice annihilated by Phi_d(sigma), with induced actions.
GroupLattice kernel_sublattice(const GroupLattice& m, long d);
/// Inclusion map of kernel_sublattice(m, d) into m.
LatticeMap kernel_inclusion(const GroupLattice& m, long d);

/// M / kernel_sublattice(m, d); torsion-free because the kernel is saturated.
GroupLattice phi_cokernel(const GroupLattice& m, long d);
/// Projection map of m onto phi_cokernel(m, d).
LatticeMap cokernel_projection(const GroupLattice& m, long d);

/// Seeded generator: a random direct sum of permutation blocks and
/// companion(Phi_d) blocks, conjugated by a small random unimodular matrix.
/// Deterministic in the seed.
GroupLattice random_lattice(const CyclicGroup& g, long z_rank, unsigned long seed);

/// Conjugate all action matrices by a unimodular matrix e (basis change).
GroupLattice conjugate(const GroupLattice& m, const IntMatrix& e);

} // namespace latcoh

#pragma once

#include "latcoh/intmatrix.hpp"

#include <optional>
#include <vector>

namespace latcoh {

/// U * A * V = D with U, V unimodular and D = diag(d_1 | d_2 | ... ), d_i >= 0.
struct SmithDecomposition {
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;

    long rank() const;
    std::vector<mpz_class> diagonal() const;
};

/// Canonical form of a finitely generated abelian group: free rank plus
/// invariant factors (each >= 2, each dividing the next; units stripped).
struct AbelianInvariants {
    long free_rank = 0;
    std::vector<mpz_class> torsion;

    bool operator==(const AbelianInvariants&) const = default;
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool is_finite() const { return free_rank == 0; }
    /// Order of the torsion part.
    mpz_class torsion_order() const;
    std::string to_string() const;
};

/// Finite presentation of an abelian group: Z^ambient_rank / (column span of
/// relations).
struct ModulePresentation {
    long ambient_rank = 0;
    IntMatrix relations; // ambient_rank x k

    static ModulePresentation of_quotient(long ambient_rank, IntMatrix relations);
};

/// Smith normal form.  Pivoting is deterministic: smallest nonzero absolute
/// value wins, ties broken by lowest (row, col) in row-major order.
SmithDecomposition smith(const IntMatrix& a);

/// Exact inverse of a unimodular integer matrix.
IntMatrix inverse_unimodular(const IntMatrix& a);

long rank(const IntMatrix& a);

/// Saturated (primitive) Z-basis of { x : A x = 0 }, one column per basis
/// vector.  Columns are normalized so the first nonzero entry is positive.
IntMatrix kernel_basis(const IntMatrix& a);

/// One integer solution of A x = b, or nullopt when none exists.
std::optional<std::vector<mpz_class>> solve_integer(const IntMatrix& a,
                                                    const std::vector<mpz_class>& b);

/// Column-wise solve of A X = B.
std::optional<IntMatrix> solve_matrix(const IntMatrix& a, const IntMatrix& b);

/// Invariants of (lattice spanned by ambient_basis) / (lattice spanned by
/// sub_generators).  Sub-generators are first expressed in ambient
/// coordinates; throws CoordinateError when one lies outside the ambient
/// lattice.
AbelianInvariants quotient_invariants(const IntMatrix& ambient_basis,
                                      const IntMatrix& sub_generators);

/// Invariants of coker(A : Z^cols -> Z^rows).
AbelianInvariants cokernel_invariants(const IntMatrix& a);

/// Invariants of the direct sum.
AbelianInvariants merge_invariants(const AbelianInvariants& a, const AbelianInvariants& b);

/// Keep only the p-parts of the invariant factors (Z_(p) localization).
AbelianInvariants p_primary_part(const AbelianInvariants& inv, const mpz_class& p);

/// Cyclic string lengths of a nilpotent operator on a finite p-torsion
/// module: the multiset {k_i} with M = (+)_i (cyclic string of length k_i),
/// recovered from the F_p-lengths of the images of the powers of nil_op.
/// Throws NotTorsion when the module is infinite or not p-torsion,
/// NotNilpotent when the operator fails to vanish eventually.
std::vector<long> nilpotent_block_sizes(const ModulePresentation& m, const IntMatrix& nil_op,
                                        const mpz_class& p);

/// True when the two column spans are equal as sublattices of Z^rows.
bool spans_equal(const IntMatrix& a, const IntMatrix& b);

} // namespace latcoh

#pragma once

#include "latcoh/cohomology.hpp"
#include "latcoh/lattice.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace latcoh {

/// Evidence that a classification flag is false: a subgroup with a nonzero
/// Tate group in the relevant degree.
struct ClassificationWitness {
    long subgroup_order = 1;
    int degree = 0; // -1 or +1
    AbelianInvariants group;
};

struct Classification {
    bool is_flabby = false;
    bool is_coflabby = false;
    std::optional<ClassificationWitness> flabby_witness;
    std::optional<ClassificationWitness> coflabby_witness;
};

/// Flabby/coflabby flags from the Tate profile.  Over a cyclic group the two
/// flags provably agree; disagreement raises InternalError.
Classification classify(const GroupLattice& m);

/// Exact sequence 0 -> inner -> middle -> outer -> 0 with permutation middle
/// and flabby outer.  All three defining conditions are checked on
/// construction.
struct Resolution {
    GroupLattice inner;
    GroupLattice middle;
    GroupLattice outer;
    LatticeMap inject;  // inner -> middle
    LatticeMap surject; // middle -> outer

    /// Throws InvariantViolation unless exact, middle permutation by record,
    /// and outer flabby.
    void validate() const;
};

/// Builds a flabby resolution by the dual-coflasque method: a permutation
/// cover of dual(m) hitting the fixed points of every subgroup, dualized
/// back.
Resolution flabby_resolution(const GroupLattice& m);

/// Result of permutation recognition over a cyclic group of prime order
/// with p-local base-ring semantics.
struct CpDecomposition {
    long trivial_multiplicity = 0; // a: copies of R
    long regular_multiplicity = 0; // c: copies of R C_p
};

struct NotPermutation {
    std::string reason;
    std::optional<ClassificationWitness> witness;
};

using CpRecognition = std::variant<CpDecomposition, NotPermutation>;

/// Theorem-1.5/1.7 shape test: a flabby lattice over C_p with Z_(p)
/// semantics must look like Z^a + (Z C_p)^c; verifies the rank bookkeeping
/// and the Tate profile of that shape.
CpRecognition permutation_recognize_cp(const GroupLattice& m, long p);

struct SteinitzDatum {
    long cyclotomic_index = 1;
    long rank = 0; // rank over Z[zeta_d]
    bool trivial_class = false;
    bool supported = false;
};

struct MobiusTerm {
    long d = 1;
    int mu = 0; // mu(n/d)
    long torsion_free_rank = 0;
    AbelianInvariants torsion;
};

struct PhiComponent {
    long d = 1;
    long z_rank = 0;    // Z-rank of (M / Phi_d M)_0
    long zeta_rank = 0; // rank over Z[zeta_d]
    AbelianInvariants torsion;
    SteinitzDatum steinitz;
    GroupLattice torsion_free;
};

struct PhiDecomposition {
    std::vector<PhiComponent> components; // one per divisor, ascending
    std::vector<MobiusTerm> mobius_terms; // M/(sigma^d - 1)M, ascending
    bool rank_identity_holds = false;
};

/// Per-divisor data of Theorem 5.3: the components (M/Phi_d M)_0 with their
/// Steinitz data, the Mobius right-hand-side terms, and the rank identity
/// sum_d phi(d) rank_{Z[zeta_d]} = z_rank.
PhiDecomposition phi_decompose(const GroupLattice& m);

/// Steinitz class of a torsion-free module over Z[zeta_d]: Trivial over the
/// class-number-one allowlist, Unsupported otherwise (never a guess).
SteinitzDatum steinitz_class(const GroupLattice& module, long d);
const std::vector<long>& steinitz_allowlist();

struct SplitWitness {
    IntMatrix section; // s with surject . s = identity, a lattice map
};
struct NoSplit {};
using SplitResult = std::variant<SplitWitness, NoSplit>;

/// Searches for an equivariant integer section of the surjection.
SplitResult split_check(const Resolution& r);

/// The explicit sequence 0 -> Z pi / Phi_n -> Z pi -> Z pi'' -> 0 over the
/// cyclic p-group of order n = p^t (q = n/p):  the first map is
/// multiplication by sigma^q - 1 on the power basis, the second the natural
/// projection onto Z[pi / <sigma^q>].  Returns the verified maps.
struct ExplicitSequence {
    long n = 1;
    long q = 1;
    GroupLattice inner;  // Z pi / Phi_n on the power basis of Z[zeta_n]
    GroupLattice middle; // Z pi
    GroupLattice outer;  // Z pi'' (permutation, orbit size q)
    LatticeMap inject;
    LatticeMap surject;
};

ExplicitSequence phi_kernel_sequence(long prime_power_n);

/// Example 4.3 driver: the twist lattice over a ramified cyclotomic base
/// whose flabby resolution dualizes to a non-invertible flabby lattice.
struct CounterexampleReport {
    long p = 0;          // the ramified prime under study
    long group_order = 0;   // |pi| (= p, or 4 in the Gaussian variant)
    long ring_index = 0; // cyclotomic index of R (p, or 4 for Gaussian)
    long block_modulus = 0; // p - 1, or 2 in the Gaussian variant
    bool hypotheses_violated = false; // ramification witness
    std::vector<long> h_minus1_m_blocks;
    std::vector<long> h0_p_blocks;
    std::vector<long> h0_e_blocks;
    std::vector<long> h0_trivial_reference_blocks; // H^0 of the trivial R-lattice
    long h0_e_length = 0;
    bool length_additivity_holds = false;
    bool not_invertible = false;
};

CounterexampleReport counterexample_4_3(long p, bool gaussian = false);

} // namespace latcoh

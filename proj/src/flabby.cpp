#include "latcoh/flabby.hpp"

#include "latcoh/errors.hpp"

#include <algorithm>
#include <numeric>

namespace latcoh {

Classification classify(const GroupLattice& m) {
    const TateProfile profile = tate_profile(m);
    Classification c;
    c.is_flabby = true;
    c.is_coflabby = true;
    for (const auto& [h, t] : profile.by_subgroup) {
        if (!t.minus_one.is_trivial() && !c.flabby_witness) {
            c.is_flabby = false;
            c.flabby_witness = ClassificationWitness{h.order, -1, t.minus_one.invariants};
        }
        if (!t.one.is_trivial() && !c.coflabby_witness) {
            c.is_coflabby = false;
            c.coflabby_witness = ClassificationWitness{h.order, +1, t.one.invariants};
        }
    }
    // Over a cyclic group H^1 and H^-1 agree at every subgroup.
    if (c.is_flabby != c.is_coflabby)
        throw InternalError("classify: flabby and coflabby disagree over a cyclic group");
    return c;
}

void Resolution::validate() const {
    inject.validate();
    surject.validate();
    if (inject.matrix.cols() != inner.z_rank || inject.matrix.rows() != middle.z_rank ||
        surject.matrix.cols() != middle.z_rank || surject.matrix.rows() != outer.z_rank)
        throw InvariantViolation("resolution: map shapes do not chain");
    if (rank(inject.matrix) != inner.z_rank)
        throw InvariantViolation("resolution: inject is not injective");
    AbelianInvariants coker = cokernel_invariants(surject.matrix);
    if (!coker.is_trivial()) throw InvariantViolation("resolution: surject is not surjective");
    if (!mul(surject.matrix, inject.matrix).is_zero())
        throw InvariantViolation("resolution: surject . inject != 0");
    if (inner.z_rank + outer.z_rank != middle.z_rank)
        throw InvariantViolation("resolution: ranks are not additive");
    if (inner.z_rank > 0 || outer.z_rank > 0) {
        if (!spans_equal(kernel_basis(surject.matrix), inject.matrix))
            throw InvariantViolation("resolution: image of inject != kernel of surject");
    }
    if (!middle.is_permutation_record())
        throw InvariantViolation("resolution: middle term lacks a permutation record");
    if (!classify(outer).is_flabby) throw InvariantViolation("resolution: outer term is not flabby");
}

Resolution flabby_resolution(const GroupLattice& m) {
    m.validate();
    const GroupLattice m0 = dual(m);
    const long n = m.group.order;

    // Permutation cover of m0: for each subgroup (ascending), one block
    // R[pi/pi'] per Z-basis vector of the pi'-fixed sublattice.  The trivial
    // subgroup contributes a full regular cover, so the map is onto; the
    // blocks for pi' make it onto the pi'-fixed points.
    std::vector<long> orbit_sizes;
    std::vector<IntMatrix> generators; // fixed vectors, one per block
    for (const Subgroup& h : subgroups(m.group)) {
        const IntMatrix fixed = fixed_sublattice(m0, h);
        for (long c = 0; c < fixed.cols(); ++c) {
            orbit_sizes.push_back(n / h.order);
            generators.push_back(fixed.col(c));
        }
    }
    const GroupLattice cover = permutation_lattice(m.base, m.group, orbit_sizes);

    // Map x_c zeta^j -> sigma^c zeta^j g, block by block.
    const long phi = m.base.is_cyclotomic() ? m.base.z_rank() : 1;
    IntMatrix s_map(m0.z_rank, cover.z_rank);
    long col = 0;
    for (size_t b = 0; b < generators.size(); ++b) {
        IntMatrix orbit_vec = generators[b];
        for (long c = 0; c < orbit_sizes[b]; ++c) {
            IntMatrix ring_vec = orbit_vec;
            for (long j = 0; j < phi; ++j) {
                for (long i = 0; i < m0.z_rank; ++i) s_map(i, col) = ring_vec(i, 0);
                ++col;
                if (j + 1 < phi) ring_vec = mul(*m0.zeta, ring_vec);
            }
            if (c + 1 < orbit_sizes[b]) orbit_vec = mul(m0.sigma, orbit_vec);
        }
    }

    LatticeMap surj_cover{cover, m0, s_map};
    surj_cover.validate();
    if (!cokernel_invariants(s_map).is_trivial())
        throw InternalError("flabby_resolution: cover is not surjective");

    // Kernel of the cover, with induced actions.
    const IntMatrix k = kernel_basis(s_map);
    GroupLattice ker;
    ker.base = m.base;
    ker.group = m.group;
    ker.z_rank = k.cols();
    auto s_act = solve_matrix(k, mul(cover.sigma, k));
    if (!s_act) throw InternalError("flabby_resolution: kernel not sigma-invariant");
    ker.sigma = std::move(*s_act);
    if (cover.zeta) {
        auto z_act = solve_matrix(k, mul(*cover.zeta, k));
        if (!z_act) throw InternalError("flabby_resolution: kernel not zeta-invariant");
        ker.zeta = std::move(*z_act);
    }
    ker.validate();

    // Dualize 0 -> ker -> cover -> m0 -> 0 into 0 -> m -> cover' -> ker' -> 0.
    Resolution res{m, dual(cover), dual(ker),
                   LatticeMap{m, dual(cover), s_map.transpose()},
                   LatticeMap{dual(cover), dual(ker), k.transpose()}};
    res.validate();
    return res;
}

CpRecognition permutation_recognize_cp(const GroupLattice& m, long p) {
    if (!is_prime(p)) throw WrongGroup("recognize: p must be prime");
    if (m.group.order != p) throw WrongGroup("recognize: group order must equal p");
    if (m.base.is_cyclotomic())
        throw MismatchedBase("recognize: cyclotomic base not supported");
    if (m.base.is_localized() && m.base.p != p)
        throw MismatchedBase("recognize: base localized at a different prime");

    GroupLattice local = m;
    local.base = BaseRing::localized(p);

    if (local.z_rank == 0) return CpDecomposition{0, 0};

    Classification cls = classify(local);
    if (!cls.is_flabby)
        return NotPermutation{"lattice is not flabby p-locally", cls.flabby_witness};

    const Subgroup full = subgroup_of_order(local.group, p);
    const long fixed_rank = fixed_sublattice(local, full).cols();
    const long z = local.z_rank;
    if ((z - fixed_rank) % (p - 1) != 0)
        return NotPermutation{"rank bookkeeping fails: (z - f) not divisible by p - 1", {}};
    const long c = (z - fixed_rank) / (p - 1);
    const long a = fixed_rank - c;
    if (a < 0 || c < 0)
        return NotPermutation{"rank bookkeeping yields negative multiplicities", {}};

    // The permutation profile: H^0(pi, .) = (Z/p)^a and H^-1 = 0.
    TateModule h0 = tate_zero(local, full);
    AbelianInvariants expect;
    for (long i = 0; i < a; ++i) expect.torsion.emplace_back(p);
    if (!(h0.invariants == expect))
        return NotPermutation{"H^0 does not match (Z/p)^a",
                              ClassificationWitness{p, 0, h0.invariants}};
    return CpDecomposition{a, c};
}

const std::vector<long>& steinitz_allowlist() {
    static const std::vector<long> list = [] {
        std::vector<long> v;
        for (long d = 1; d <= 22; ++d) v.push_back(d);
        for (long d : {24, 25, 26, 27, 28, 30, 32, 33, 34, 35, 36, 38, 40,
                       42, 44, 45, 48, 50, 54, 60, 66, 70, 84, 90})
            v.push_back(d);
        return v;
    }();
    return list;
}

SteinitzDatum steinitz_class(const GroupLattice& module, long d) {
    if (!poly_eval_matrix(cyclotomic(d).coeffs, module.sigma).is_zero())
        throw InvariantViolation("steinitz: Phi_d(sigma) does not vanish on the module");
    SteinitzDatum s;
    s.cyclotomic_index = d;
    const long phi = euler_phi(d);
    if (module.z_rank % phi != 0)
        throw InternalError("steinitz: rank not divisible by phi(d)");
    s.rank = module.z_rank / phi;
    const auto& allow = steinitz_allowlist();
    s.supported = std::find(allow.begin(), allow.end(), d) != allow.end();
    s.trivial_class = s.supported;
    return s;
}

PhiDecomposition phi_decompose(const GroupLattice& m) {
    PhiDecomposition out;
    const long n = m.group.order;
    long rank_sum = 0;
    for (long d : divisors(n)) {
        PhiQuotient q = phi_quotient(m, d);
        PhiComponent comp;
        comp.d = d;
        comp.z_rank = q.torsion_free.z_rank;
        const long phi = euler_phi(d);
        if (comp.z_rank % phi != 0)
            throw InternalError("phi_decompose: component rank not divisible by phi(d)");
        comp.zeta_rank = comp.z_rank / phi;
        comp.torsion = q.torsion;
        comp.steinitz = steinitz_class(q.torsion_free, d);
        comp.torsion_free = std::move(q.torsion_free);
        rank_sum += comp.z_rank;
        out.components.push_back(std::move(comp));

        MobiusTerm term;
        term.d = d;
        term.mu = mobius(n / d);
        const IntMatrix bd = mat_pow(m.sigma, d) - IntMatrix::identity(m.z_rank);
        AbelianInvariants inv = cokernel_invariants(bd);
        term.torsion_free_rank = inv.free_rank;
        inv.free_rank = 0;
        term.torsion = std::move(inv);
        out.mobius_terms.push_back(std::move(term));
    }
    out.rank_identity_holds = rank_sum == m.z_rank;
    return out;
}

SplitResult split_check(const Resolution& r) {
    r.validate();
    const IntMatrix& s = r.surject.matrix;        // e x p
    const long pr = r.middle.z_rank, er = r.outer.z_rank;
    if (er == 0) return SplitWitness{IntMatrix(pr, 0)};

    // Unknown section X (p x e), vec column-major: constraints
    //   (I_e kron S) vec = vec(I_e)
    //   (I_e kron sigma_P - sigma_E^T kron I_p) vec = 0, same for zeta.
    const IntMatrix ie = IntMatrix::identity(er);
    const IntMatrix ip = IntMatrix::identity(pr);
    IntMatrix system = kron(ie, s);
    IntMatrix rhs(er * er, 1);
    for (long i = 0; i < er; ++i) rhs(i * er + i, 0) = 1;

    IntMatrix commute = kron(ie, r.middle.sigma) - kron(r.outer.sigma.transpose(), ip);
    system = vstack(system, commute);
    rhs = vstack(rhs, IntMatrix(pr * er, 1));
    if (r.middle.zeta) {
        IntMatrix zc = kron(ie, *r.middle.zeta) - kron(r.outer.zeta->transpose(), ip);
        system = vstack(system, zc);
        rhs = vstack(rhs, IntMatrix(pr * er, 1));
    }

    auto x = solve_matrix(system, rhs);
    if (!x) return NoSplit{};
    IntMatrix section(pr, er);
    for (long j = 0; j < er; ++j)
        for (long i = 0; i < pr; ++i) section(i, j) = (*x)(j * pr + i, 0);

    LatticeMap sec{r.outer, r.middle, section};
    sec.validate();
    if (!mul(s, section).is_identity())
        throw InternalError("split_check: solver returned a non-section");
    // A section splits the middle term: [inject | section] is unimodular.
    IntMatrix iso = hstack(r.inject.matrix, section);
    if (!smith(iso).d.is_identity())
        throw InternalError("split_check: section does not yield a direct-sum witness");
    return SplitWitness{std::move(section)};
}

ExplicitSequence phi_kernel_sequence(long n) {
    const auto ps = prime_factors(n);
    if (n < 2 || ps.size() != 1)
        throw BadDivisor("phi_kernel_sequence: n must be a prime power >= 2");
    const long p = ps[0];
    const long q = n / p;
    const CyclicGroup g{n};

    ExplicitSequence seq;
    seq.n = n;
    seq.q = q;

    // Z pi / <Phi_n(sigma)> on the power basis of Z[zeta_n].
    const PolyZ phi = cyclotomic(n).coeffs;
    const long deg = poly_deg(phi);
    GroupLattice inner;
    inner.base = BaseRing::integers();
    inner.group = g;
    inner.z_rank = deg;
    {
        IntMatrix c(deg, deg);
        for (long i = 0; i + 1 < deg; ++i) c(i + 1, i) = 1;
        for (long i = 0; i < deg; ++i) c(i, deg - 1) = -phi[static_cast<size_t>(i)];
        inner.sigma = std::move(c);
    }
    inner.validate();

    seq.middle = regular_lattice(BaseRing::integers(), g);
    seq.outer = permutation_lattice(BaseRing::integers(), g, {q});

    // First map: [u] -> (sigma^q - 1) u, on lifts X^j this is
    // e_{(q+j) mod n} - e_j; well defined because (X^q - 1) Phi_n = X^n - 1.
    IntMatrix inj(n, deg);
    for (long j = 0; j < deg; ++j) {
        inj((q + j) % n, j) += 1;
        inj(j, j) -= 1;
    }
    // Second map: natural projection sigma^i -> basis (i mod q) of Z pi''.
    IntMatrix proj(q, n);
    for (long i = 0; i < n; ++i) proj(i % q, i) += 1;

    seq.inner = std::move(inner);
    seq.inject = LatticeMap{seq.inner, seq.middle, std::move(inj)};
    seq.surject = LatticeMap{seq.middle, seq.outer, std::move(proj)};
    seq.inject.validate();
    seq.surject.validate();

    if (rank(seq.inject.matrix) != deg)
        throw InternalError("phi_kernel_sequence: inject not injective");
    if (!cokernel_invariants(seq.surject.matrix).is_trivial())
        throw InternalError("phi_kernel_sequence: projection not surjective");
    if (!mul(seq.surject.matrix, seq.inject.matrix).is_zero())
        throw InternalError("phi_kernel_sequence: composite nonzero");
    if (!spans_equal(kernel_basis(seq.surject.matrix), seq.inject.matrix))
        throw InternalError("phi_kernel_sequence: sequence not exact in the middle");
    return seq;
}

CounterexampleReport counterexample_4_3(long p, bool gaussian) {
    CounterexampleReport rep;
    GroupLattice m;
    if (gaussian) {
        // Uniform twist at the prime 2: sigma u = zeta u with zeta = sqrt(-1),
        // so sigma has order 4 and sigma^2 u = -u.  Invertible lattices over
        // this ramified base have H^0 blocks of even (1-zeta)-length, so an
        // odd total length certifies non-invertibility.
        rep.p = 2;
        rep.group_order = 4;
        rep.ring_index = 4;
        rep.block_modulus = 2;
        m.base = BaseRing::cyclotomic(4);
        m.group = CyclicGroup{4};
        m.z_rank = 2;
        m.sigma = m.base.zeta_matrix();
        m.zeta = m.base.zeta_matrix();
    } else {
        if (p != 3 && p != 5 && p != 7)
            throw UnsupportedPrime("counterexample: p must be an odd prime <= 7");
        rep.p = p;
        rep.group_order = p;
        rep.ring_index = p;
        rep.block_modulus = p - 1;
        m.base = BaseRing::cyclotomic(p);
        m.group = CyclicGroup{p};
        m.z_rank = p - 1;
        m.sigma = m.base.zeta_matrix(); // sigma . u = zeta u
        m.zeta = m.base.zeta_matrix();
    }
    m.validate();

    rep.hypotheses_violated = !validate_hypotheses(m.base, m.group).all_hold();

    // Flabby resolution of the dual, dualized back: 0 -> E -> P -> M -> 0.
    const Resolution res = flabby_resolution(dual(m));
    const GroupLattice big_p = dual(res.middle);
    const GroupLattice e = dual(res.outer);
    LatticeMap into_p{e, big_p, res.surject.matrix.transpose()};
    LatticeMap onto_m{big_p, m, res.inject.matrix.transpose()};
    into_p.validate();
    onto_m.validate();
    if (!mul(onto_m.matrix, into_p.matrix).is_zero() ||
        !spans_equal(kernel_basis(onto_m.matrix), into_p.matrix) ||
        !cokernel_invariants(onto_m.matrix).is_trivial())
        throw InternalError("counterexample: dualized sequence is not exact");

    const Subgroup full = subgroup_of_order(m.group, m.group.order);
    rep.h_minus1_m_blocks = *tate_minus_one(m, full, true).zeta_blocks;
    rep.h0_p_blocks = *tate_zero(big_p, full, true).zeta_blocks;
    rep.h0_e_blocks = *tate_zero(e, full, true).zeta_blocks;
    rep.h0_trivial_reference_blocks =
        *tate_zero(trivial_lattice(m.base, m.group), full, true).zeta_blocks;

    auto total = [](const std::vector<long>& blocks) {
        return std::accumulate(blocks.begin(), blocks.end(), 0L);
    };
    rep.h0_e_length = total(rep.h0_e_blocks);
    rep.length_additivity_holds =
        rep.h0_e_length == total(rep.h_minus1_m_blocks) + total(rep.h0_p_blocks);
    // If E were invertible, H^0(pi, E) would be free over R/(1-zeta)^modulus
    // and its length a multiple of the modulus.
    rep.not_invertible = rep.h0_e_length % rep.block_modulus != 0;
    return rep;
}

} // namespace latcoh
